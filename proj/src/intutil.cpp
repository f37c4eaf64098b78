#include "arithsurf/intutil.hpp"

#include "arithsurf/errors.hpp"

namespace arithsurf {

int padic_val(const Int& n, const Int& p) {
    if (n == 0) throw value_error("valuation of zero");
    Int m = abs(n);
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

int padic_val(const Rat& q, const Int& p) {
    if (q == 0) throw value_error("valuation of zero");
    return padic_val(Int(q.get_num()), p) - padic_val(Int(q.get_den()), p);
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int mod_p(const Rat& q, const Int& p) {
    Int num = q.get_num(), den = q.get_den();
    if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
        throw value_error("p divides denominator in mod_p");
    Int r = ((num % p) + p) % p;
    return (r * inv_mod(den % p, p)) % p;
}

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw value_error("non-invertible residue");
    return r;
}

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

Int pollard_rho(const Int& n) {
    // Brent's cycle variant; n odd composite, not a prime power of small primes.
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x - y;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(Int n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::map<Int, int> factor_integer(Int n) {
    std::map<Int, int> out;
    if (n < 0) n = -n;
    if (n == 0) throw value_error("factoring zero");
    for (Int p : {Int(2), Int(3), Int(5), Int(7), Int(11), Int(13)}) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            out[p]++;
            n /= p;
        }
    }
    for (Int p = 17; p * p <= n && p < 20000; p += 2) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            out[p]++;
            n /= p;
        }
    }
    factor_rec(n, out);
    return out;
}

Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Int> sqrt_mod(const Int& a0, const Int& p) {
    Int a = ((a0 % p) + p) % p;
    if (a == 0) return Int(0);
    Int pm1 = p - 1;
    Int leg;
    mpz_powm(leg.get_mpz_t(), a.get_mpz_t(), Int(pm1 / 2).get_mpz_t(), p.get_mpz_t());
    if (leg == pm1) return std::nullopt;
    if (p % 4 == 3) {
        Int r;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), Int((p + 1) / 4).get_mpz_t(), p.get_mpz_t());
        return r;
    }
    // Tonelli-Shanks: p - 1 = q * 2^s with q odd
    Int q = pm1;
    unsigned long s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    for (;; ++z) {
        Int l;
        mpz_powm(l.get_mpz_t(), z.get_mpz_t(), Int(pm1 / 2).get_mpz_t(), p.get_mpz_t());
        if (l == pm1) break;
    }
    Int c, t, r;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), Int((q + 1) / 2).get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        Int tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
            if (i == m) return std::nullopt;  // not a residue (should not happen)
        }
        Int b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

bool perfect_square(const Int& n, Int* root) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

}  // namespace arithsurf
