#include "arithsurf/numberfield.hpp"

#include <algorithm>
#include <sstream>

#include "arithsurf/errors.hpp"

namespace arithsurf {

namespace {

bool squarefree(long d) {
    long n = d < 0 ? -d : d;
    for (long k = 2; k * k <= n; ++k)
        if (n % (k * k) == 0) return false;
    return true;
}

long mod4(long d) { return ((d % 4) + 4) % 4; }

NumberField promote(const NumberField& x, const NumberField& y) {
    if (x == y) return x;
    if (x.is_rational()) return y;
    if (y.is_rational()) return x;
    throw value_error("elements of different quadratic fields");
}

}  // namespace

NumberField NumberField::quadratic(long d) {
    if (d == 0 || d == 1 || !squarefree(d)) throw value_error("d must be squarefree, not 0 or 1");
    NumberField f;
    f.kind = Kind::quadratic;
    f.d = d;
    return f;
}

bool NumberField::omega_half() const {
    return kind == Kind::quadratic && mod4(d) == 1;
}

Int NumberField::discriminant() const {
    if (kind == Kind::rational) return 1;
    return omega_half() ? Int(d) : Int(4) * d;
}

void NumberField::omega_minpoly(Int& lin, Int& con) const {
    if (omega_half()) {
        lin = -1;
        con = Int(1 - d) / 4;
    } else {
        lin = 0;
        con = -Int(d);
    }
}

NFElem NFElem::sqrt_d(NumberField f) {
    if (f.is_rational()) throw value_error("sqrt_d of the rational field");
    // sqrt d = 2*omega - 1 when omega = (1+sqrt d)/2
    if (f.omega_half()) return NFElem(f, -1, 2);
    return NFElem(f, 0, 1);
}

bool NFElem::is_integral() const {
    return a.get_den() == 1 && b.get_den() == 1;
}

NFElem NFElem::operator+(const NFElem& o) const {
    NumberField f = promote(field, o.field);
    return NFElem(f, a + o.a, b + o.b);
}

NFElem NFElem::operator-(const NFElem& o) const {
    NumberField f = promote(field, o.field);
    return NFElem(f, a - o.a, b - o.b);
}

NFElem NFElem::operator*(const NFElem& o) const {
    NumberField f = promote(field, o.field);
    if (f.is_rational()) return NFElem(f, a * o.a, 0);
    // omega^2 = omega - (1-d)/4   or   omega^2 = d
    Int lin, con;
    f.omega_minpoly(lin, con);
    Rat cross = b * o.b;
    return NFElem(f, a * o.a - cross * con, a * o.b + b * o.a - cross * lin);
}

NFElem NFElem::operator/(const NFElem& o) const { return *this * o.inverse(); }

bool NFElem::operator==(const NFElem& o) const { return a == o.a && b == o.b; }

NFElem NFElem::conj() const {
    if (field.is_rational()) return *this;
    // conj(omega) = -lin - omega  (the other root of the minimal polynomial)
    Int lin, con;
    field.omega_minpoly(lin, con);
    return NFElem(field, a - b * Rat(lin), -b);
}

Rat NFElem::trace() const {
    if (field.is_rational()) return a;
    NFElem t = *this + conj();
    return t.a;
}

Rat NFElem::norm() const {
    if (field.is_rational()) return a;
    NFElem n = *this * conj();
    if (n.b != 0) throw value_error("norm not rational (internal)");
    return n.a;
}

NFElem NFElem::inverse() const {
    if (is_zero()) throw value_error("inverse of zero");
    if (field.is_rational()) return NFElem(field, 1 / a, 0);
    Rat n = norm();
    NFElem c = conj();
    return NFElem(field, c.a / n, c.b / n);
}

NFElem NFElem::pow(long e) const {
    NFElem base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? -e : e;
    NFElem r = NFElem(field, 1, 0);
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

namespace {

std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

}  // namespace

std::string NFElem::str() const {
    if (field.is_rational() || b == 0) return rat_str(a);
    // print in the sqrt(d) basis: a + b*omega = (a + b/2) + (b/2) sqrt(d)
    Rat ra = a, rb = b;
    if (field.omega_half()) {
        ra = a + b / 2;
        rb = b / 2;
    }
    std::ostringstream os;
    if (ra != 0) os << rat_str(ra);
    if (rb != 0) {
        if (ra != 0 && rb > 0) os << "+";
        if (rb == -1)
            os << "-";
        else if (rb != 1)
            os << rat_str(rb) << "*";
        os << "sqrt(" << field.d << ")";
    }
    if (ra == 0 && rb == 0) os << "0";
    return os.str();
}

NFElem NFElem::parse(const std::string& s, const NumberField& f) {
    // accepts "<rat>", "<rat>+<rat>*sqrt(D)", "<rat>-...", "sqrt(D)", "-sqrt(D)"
    std::string t;
    for (char ch : s)
        if (!isspace(static_cast<unsigned char>(ch))) t += ch;
    auto pos = t.find("sqrt(");
    if (pos == std::string::npos) return NFElem(f, Rat(t), 0);
    if (f.is_rational()) throw value_error("sqrt in a rational scenario");
    auto close = t.find(')', pos);
    long dd = std::stol(t.substr(pos + 5, close - pos - 5));
    if (dd != f.d) throw value_error("sqrt argument does not match the base field");
    // split into rational part and sqrt coefficient
    std::string coef;
    size_t cut = pos;
    if (cut > 0 && t[cut - 1] == '*') --cut;
    size_t start = cut;
    while (start > 0) {
        char ch = t[start - 1];
        if (ch == '+' || ch == '-') {
            --start;
            break;
        }
        --start;
    }
    coef = t.substr(start, cut - start);
    if (!coef.empty() && coef[0] == '+') coef.erase(0, 1);
    if (coef.empty())
        coef = "1";
    else if (coef == "-")
        coef = "-1";
    std::string rest = t.substr(0, start) + t.substr(close + 1);
    Rat ra = rest.empty() ? Rat(0) : Rat(rest);
    Rat rb(coef);
    // convert from the sqrt(d) basis to the omega basis
    if (f.omega_half()) return NFElem(f, ra - rb, 2 * rb);
    return NFElem(f, ra, rb);
}

// ---------------------------------------------------------------------------
// primes of B

namespace {

// v_p(m(r)) for the omega minimal polynomial at integer r
int minpoly_val(const NumberField& K, const Int& r, const Int& p) {
    Int lin, con;
    K.omega_minpoly(lin, con);
    Int v = r * r + lin * r + con;
    if (v == 0) throw value_error("omega is rational?");
    return padic_val(v, p);
}

}  // namespace

std::vector<PrimeOfB> factor_prime(const Int& p, const NumberField& K) {
    if (!is_prime(p)) throw value_error("factor_prime: not a prime");
    std::vector<PrimeOfB> out;
    if (K.is_rational()) {
        PrimeOfB b;
        b.field = K;
        b.p = p;
        b.split = PrimeOfB::Split::rational;
        b.second_gen = NFElem(K, Rat(p), 0);
        b.helper = NFElem(K, 1, 0);
        out.push_back(b);
        return out;
    }
    Int lin, con;
    K.omega_minpoly(lin, con);
    // roots of x^2 + lin x + con mod p
    std::vector<Int> roots;
    if (p == 2) {
        for (Int r = 0; r < 2; ++r)
            if ((r * r + lin * r + con) % 2 == 0) roots.push_back(r);
    } else {
        Int disc = ((lin * lin - 4 * con) % p + p) % p;
        if (disc == 0) {
            roots.push_back((-lin % p + p) % p * inv_mod(2, p) % p);
        } else if (auto sq = sqrt_mod(disc, p)) {
            Int inv2 = inv_mod(2, p);
            Int r1 = ((-lin + *sq) % p + p) % p * inv2 % p;
            Int r2 = ((-lin - *sq) % p + p) % p * inv2 % p;
            roots.push_back(r1);
            if (r2 != r1) roots.push_back(r2);
        }
    }
    NFElem omega = NFElem::omega(K);
    if (roots.empty()) {
        PrimeOfB b;
        b.field = K;
        b.p = p;
        b.split = PrimeOfB::Split::inert;
        b.f = 2;
        b.second_gen = NFElem(K, Rat(p), 0);
        b.helper = NFElem(K, 1, 0);
        out.push_back(b);
        return out;
    }
    if (roots.size() == 2) {
        for (int i = 0; i < 2; ++i) {
            Int r = roots[i], other = roots[1 - i];
            // normalize the lift so that v_p(m(r)) == 1, making omega - r a
            // uniformizer at this prime
            if (minpoly_val(K, r, p) > 1) r += p;
            if (minpoly_val(K, other, p) > 1) other += p;
            PrimeOfB b;
            b.field = K;
            b.p = p;
            b.split = PrimeOfB::Split::split;
            b.root = r;
            b.second_gen = omega - NFElem(K, Rat(r), 0);
            b.helper = omega - NFElem(K, Rat(other), 0);
            out.push_back(b);
        }
        return out;
    }
    // ramified: double root
    PrimeOfB b;
    b.field = K;
    b.p = p;
    b.split = PrimeOfB::Split::ramified;
    b.e = 2;
    b.root = roots[0];
    long d = K.d;
    NFElem sq = NFElem::sqrt_d(K);
    NFElem pi;
    if (p == 2) {
        if (mod4(d) == 3)
            pi = NFElem(K, 1, 0) + sq;  // N = 1 - d, v_2 = 1
        else
            pi = sq;  // d even, N = -d, v_2 = 1
    } else {
        pi = sq;  // p odd divides d, N(sqrt d) = -d has v_p = 1
    }
    if (padic_val(pi.norm(), p) != 1) throw value_error("bad ramified uniformizer (internal)");
    b.second_gen = pi;
    b.helper = pi.conj();
    out.push_back(b);
    return out;
}

PrimeOfB prime_above(const Int& p, const NumberField& K, int tag) {
    auto v = factor_prime(p, K);
    if (tag < 0 || tag >= static_cast<int>(v.size())) throw value_error("no such prime tag");
    return v[tag];
}

bool PrimeOfB::operator==(const PrimeOfB& o) const {
    return p == o.p && split == o.split && root == o.root && field == o.field;
}

bool PrimeOfB::operator<(const PrimeOfB& o) const {
    if (p != o.p) return p < o.p;
    if (split != o.split) return static_cast<int>(split) < static_cast<int>(o.split);
    return root < o.root;
}

std::string PrimeOfB::str() const {
    std::ostringstream os;
    switch (split) {
        case Split::rational:
        case Split::inert:
            os << "(" << p.get_str() << ")";
            break;
        default:
            os << "(" << p.get_str() << "," << second_gen.str() << ")";
    }
    return os.str();
}

int valuation_at(const NFElem& x, const PrimeOfB& b) {
    if (x.is_zero()) throw value_error("valuation of zero");
    if (!(promote(x.field, b.field) == b.field)) throw value_error("element/prime field mismatch");
    // write x = w / D with w integral
    Int D = lcm(Int(x.a.get_den()), Int(x.b.get_den()));
    NFElem w(b.field, x.a * D, x.b * D);
    int shift = b.e * padic_val(D, b.p);
    // strip uniformizer powers with the helper: w -> w*h/p exactly while integral
    int v = 0;
    for (;;) {
        NFElem t = w * b.helper;
        NFElem cand(b.field, t.a / Rat(b.p), t.b / Rat(b.p));
        if (!cand.is_integral()) break;
        w = cand;
        ++v;
    }
    return v - shift;
}

FqCtxPtr residue_field(const PrimeOfB& b) {
    auto fp = FqCtx::prime_field(b.p);
    if (b.f == 1) return fp;
    // inert: F_p[x]/(minpoly of omega mod p)
    Int lin, con;
    b.field.omega_minpoly(lin, con);
    Poly<FqElem> m(std::vector<FqElem>{fp->from_int(con), fp->from_int(lin), fp->one()});
    return FqCtx::extension(fp, m);
}

FqElem residue_at(const NFElem& x, const PrimeOfB& b) {
    return residue_at(x, b, residue_field(b));
}

FqElem residue_at(const NFElem& x, const PrimeOfB& b, const FqCtxPtr& k) {
    if (x.is_zero()) return k->zero();
    if (valuation_at(x, b) < 0) throw value_error("not integral at b");
    Int D = lcm(Int(x.a.get_den()), Int(x.b.get_den()));
    NFElem w(b.field, x.a * D, x.b * D);
    int alpha = padic_val(D, b.p);
    Int Dp = D / pow_int(b.p, alpha);  // prime-to-p part
    FqElem corr = k->from_int(Dp).inverse();
    using Split = PrimeOfB::Split;
    if (alpha > 0) {
        switch (b.split) {
            case Split::rational:
            case Split::inert:
            case Split::ramified: {
                // the only prime above p: v(w) >= e*alpha implies exact division
                Rat pa = Rat(pow_int(b.p, alpha));
                NFElem cand(b.field, w.a / pa, w.b / pa);
                if (!cand.is_integral()) throw value_error("not integral at b");
                w = cand;
                break;
            }
            case Split::split: {
                // clear the conjugate-prime denominator with the helper
                for (int i = 0; i < alpha; ++i) {
                    NFElem t = w * b.helper;
                    NFElem cand(b.field, t.a / Rat(b.p), t.b / Rat(b.p));
                    if (!cand.is_integral()) throw value_error("not integral at b");
                    w = cand;
                }
                // residue correction: divide by res(helper)^alpha
                Int hres = (b.helper.a.get_num() + b.helper.b.get_num() * b.root) % b.p;
                FqElem h = k->from_int(hres);
                corr = corr * h.inverse().pow(alpha);
                break;
            }
        }
    }
    // w is integral now; reduce coordinates
    Int wa = w.a.get_num(), wb = w.b.get_num();
    FqElem img;
    switch (b.split) {
        case Split::rational:
            img = k->from_int(wa);
            break;
        case Split::split:
        case Split::ramified:
            img = k->from_int(wa + wb * b.root);
            break;
        case Split::inert: {
            FqElem xgen = k->gen();
            img = k->from_int(wa) + xgen * k->from_int(wb);
            break;
        }
    }
    return img * corr;
}

NFElem norm_resultant(const Poly<NFElem>& h, const Poly<NFElem>& g) {
    if (h.is_zero() || g.is_zero()) throw value_error("norm_resultant of zero");
    if (!(h.lc() == NFElem(1))) throw value_error("norm_resultant: h must be monic");
    NFElem r = resultant(h, g);
    if (r.is_zero()) throw value_error("non-unit argument");
    return r;
}

// ---------------------------------------------------------------------------
// divisors and classes on B

void DivisorOnB::add(const PrimeOfB& b, long n) {
    if (n == 0) return;
    auto it = coeff.find(b);
    if (it == coeff.end()) {
        coeff.emplace(b, n);
    } else {
        it->second += n;
        if (it->second == 0) coeff.erase(it);
    }
}

DivisorOnB DivisorOnB::operator+(const DivisorOnB& o) const {
    DivisorOnB r = *this;
    for (const auto& [b, n] : o.coeff) r.add(b, n);
    return r;
}

DivisorOnB DivisorOnB::operator-(const DivisorOnB& o) const {
    DivisorOnB r = *this;
    for (const auto& [b, n] : o.coeff) r.add(b, -n);
    return r;
}

DivisorOnB DivisorOnB::operator*(long n) const {
    DivisorOnB r;
    if (n == 0) return r;
    for (const auto& [b, m] : coeff) r.add(b, m * n);
    return r;
}

long DivisorOnB::at(const PrimeOfB& b) const {
    auto it = coeff.find(b);
    return it == coeff.end() ? 0 : it->second;
}

DivisorOnB DivisorOnB::meet_max(const DivisorOnB& o) const {
    DivisorOnB r;
    for (const auto& [b, n] : coeff) r.add(b, std::max(n, o.at(b)));
    for (const auto& [b, n] : o.coeff)
        if (!coeff.count(b)) r.add(b, std::max(n, 0L));
    return r;
}

Rat DivisorOnB::norm() const {
    Rat r = 1;
    for (const auto& [b, n] : coeff) {
        Rat f(b.norm());
        for (long i = 0; i < std::abs(n); ++i) {
            if (n > 0)
                r *= f;
            else
                r /= f;
        }
    }
    return r;
}

std::string DivisorOnB::str() const {
    if (coeff.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, n] : coeff) {
        if (!first) os << " ";
        if (n >= 0 && !first) os << "+";
        os << n << "*" << b.str();
        first = false;
    }
    return os.str();
}

DivisorOnB principal_divisor(const NFElem& x) {
    if (x.is_zero()) throw value_error("divisor of zero");
    DivisorOnB D;
    Rat n = x.norm();
    Int num = abs(n.get_num()), den = n.get_den();
    std::map<Int, int> ps = factor_integer(num * den);
    for (const auto& [p, _] : ps) {
        for (const PrimeOfB& b : factor_prime(p, x.field)) {
            int v = valuation_at(x, b);
            D.add(b, v);
        }
    }
    return D;
}

std::vector<NFElem> integral_elements_of_norm(const Int& M, const NumberField& K) {
    std::vector<NFElem> out;
    if (K.is_rational()) {
        out.push_back(NFElem(K, Rat(M), 0));
        out.push_back(NFElem(K, Rat(-M), 0));
        return out;
    }
    if (K.d > 0) throw unsupported_error("norm enumeration unsupported for real quadratic fields");
    long d = K.d;
    Int absd = -d;
    if (!K.omega_half()) {
        // N(x + y sqrt d) = x^2 + |d| y^2
        Int ymax = isqrt(M / absd);
        for (Int y = 0; y <= ymax; ++y) {
            Int rest = M - absd * y * y, x;
            if (perfect_square(rest, &x)) {
                for (int sx : {1, -1})
                    for (int sy : {1, -1}) {
                        if (x == 0 && sx < 0) continue;
                        if (y == 0 && sy < 0) continue;
                        out.push_back(NFElem(K, Rat(sx * x), Rat(sy * y)));
                    }
            }
        }
    } else {
        // N(x + y omega) = (2x + y)^2/4 + |d| y^2/4; enumerate u = 2x+y
        Int ymax = isqrt(4 * M / absd);
        for (Int y = -ymax; y <= ymax; ++y) {
            Int rest = 4 * M - absd * y * y, u;
            if (rest < 0) continue;
            if (perfect_square(rest, &u)) {
                for (int su : {1, -1}) {
                    Int uu = su * u;
                    if (u == 0 && su < 0) continue;
                    if ((uu - y) % 2 != 0) continue;
                    Int x = (uu - y) / 2;
                    out.push_back(NFElem(K, Rat(x), Rat(y)));
                }
            }
        }
    }
    return out;
}

ClassOnB divisor_class_reduce(const DivisorOnB& D, const NumberField& K) {
    if (K.kind == NumberField::Kind::quadratic && K.d > 0)
        throw unsupported_error("class reduction unsupported for real quadratic fields");
    ClassOnB cls;
    cls.representative = D;
    if (K.is_rational()) {
        // Spec O_K is a PID: the generator is the product of prime powers
        NFElem gen(K, 1, 0);
        for (const auto& [b, n] : D.coeff) gen = gen * NFElem(K, Rat(b.p), 0).pow(n);
        cls.principal = true;
        cls.generator = gen;
        return cls;
    }
    // clear denominators: multiply by div(m) so all exponents become >= 0
    NFElem shift_gen(K, 1, 0);
    DivisorOnB E = D;
    for (const auto& [b, n] : D.coeff) {
        if (n < 0) {
            // p^{|n|} kills the negative part at every prime above p
            NFElem m(K, Rat(pow_int(b.p, -n)), 0);
            shift_gen = shift_gen * m;
        }
    }
    E = D + principal_divisor(shift_gen);
    // candidate generators: |N| = N(E)
    Rat nr = E.norm();
    if (nr.get_den() != 1) throw value_error("internal: integral ideal with fractional norm");
    Int M = nr.get_num();
    if (M > Int("100000000000"))
        throw unsupported_error("class reduction unsupported beyond the generator search bound");
    for (const NFElem& alpha : integral_elements_of_norm(M, K)) {
        if (alpha.is_zero()) continue;
        if (principal_divisor(alpha) == E) {
            cls.principal = true;
            cls.generator = alpha / shift_gen;
            return cls;
        }
    }
    cls.principal = false;
    cls.search_bound = M;
    return cls;
}

bool same_class(const DivisorOnB& D, const DivisorOnB& E, const NumberField& K) {
    return divisor_class_reduce(D - E, K).principal;
}

std::string ClassOnB::str() const {
    std::ostringstream os;
    if (principal)
        os << "principal(" << generator->str() << ")";
    else
        os << "nonprincipal[bound " << search_bound.get_str() << "]";
    return os.str();
}

}  // namespace arithsurf
