#include "arithsurf/finitefield.hpp"

#include <algorithm>
#include <sstream>

#include "arithsurf/errors.hpp"

namespace arithsurf {

namespace {

const FqCtx& require_ctx(const FqElem& a, const FqElem& b) {
    if (a.ctx) {
        if (b.ctx && !a.ctx->same_as(*b.ctx)) throw value_error("mixed finite field contexts");
        return *a.ctx;
    }
    if (b.ctx) return *b.ctx;
    throw value_error("operation on two unattached zeros");
}

FqCtxPtr pick_ctx(const FqElem& a, const FqElem& b) {
    return a.ctx ? a.ctx : b.ctx;
}

}  // namespace

FqElem coeff_one(const FqElem& x) {
    if (!x.ctx) throw value_error("coeff_one of unattached zero");
    return x.ctx->one();
}

FqElem::FqElem(FqCtxPtr c, std::vector<Int> v) : ctx(std::move(c)), coords(std::move(v)) {
    if (ctx && static_cast<int>(coords.size()) != ctx->abs_deg)
        throw value_error("coordinate size mismatch");
    if (ctx)
        for (auto& x : coords) x = ((x % ctx->p) + ctx->p) % ctx->p;
}

bool FqElem::is_zero() const {
    for (const auto& x : coords)
        if (x != 0) return false;
    return true;
}

bool FqElem::operator==(const FqElem& o) const {
    if (!ctx || !o.ctx) return is_zero() && o.is_zero();
    if (!ctx->same_as(*o.ctx)) return false;
    return coords == o.coords;
}

FqElem FqElem::operator+(const FqElem& o) const {
    if (!ctx && !o.ctx) return FqElem();
    const FqCtx& C = require_ctx(*this, o);
    std::vector<Int> r(C.abs_deg, 0);
    for (size_t i = 0; i < coords.size(); ++i) r[i] += coords[i];
    for (size_t i = 0; i < o.coords.size(); ++i) r[i] += o.coords[i];
    return FqElem(pick_ctx(*this, o), std::move(r));
}

FqElem FqElem::operator-(const FqElem& o) const {
    if (!ctx && !o.ctx) return FqElem();
    const FqCtx& C = require_ctx(*this, o);
    std::vector<Int> r(C.abs_deg, 0);
    for (size_t i = 0; i < coords.size(); ++i) r[i] += coords[i];
    for (size_t i = 0; i < o.coords.size(); ++i) r[i] -= o.coords[i];
    return FqElem(pick_ctx(*this, o), std::move(r));
}

namespace {

// Chunk an extension element into a polynomial over the base field.
Poly<FqElem> to_base_poly(const FqCtx& C, const FqElem& v) {
    int bd = C.base->abs_deg;
    std::vector<FqElem> cs;
    for (int j = 0; j < C.rel_deg; ++j) {
        std::vector<Int> chunk(v.coords.begin() + j * bd, v.coords.begin() + (j + 1) * bd);
        cs.push_back(FqElem(C.base, std::move(chunk)));
    }
    return Poly<FqElem>(std::move(cs));
}

FqElem from_base_poly(const FqCtx& C, const Poly<FqElem>& f) {
    int bd = C.base->abs_deg;
    std::vector<Int> out(C.abs_deg, 0);
    for (int j = 0; j <= f.deg(); ++j) {
        if (j >= C.rel_deg) throw value_error("degree overflow in tower reduction");
        const FqElem& cj = f[j];
        for (size_t i = 0; i < cj.coords.size(); ++i) out[j * bd + i] = cj.coords[i];
    }
    auto self = C.shared_from_this();
    return FqElem(self, std::move(out));
}

}  // namespace

FqElem FqElem::operator*(const FqElem& o) const {
    if (!ctx && !o.ctx) return FqElem();
    const FqCtx& C = require_ctx(*this, o);
    if (is_zero() || o.is_zero()) return C.zero();
    if (!C.base) {
        return FqElem(pick_ctx(*this, o), {coords[0] * o.coords[0] % C.p});
    }
    Poly<FqElem> fa = to_base_poly(C, ctx ? *this : C.zero());
    Poly<FqElem> fb = to_base_poly(C, o.ctx ? o : C.zero());
    auto [q, r] = divmod(fa * fb, C.modulus);
    return from_base_poly(C, r);
}

FqElem FqElem::inverse() const {
    if (!ctx || is_zero()) throw value_error("inverse of zero in finite field");
    const FqCtx& C = *ctx;
    if (!C.base) return FqElem(ctx, {inv_mod(coords[0], C.p)});
    auto g = poly_xgcd(to_base_poly(C, *this), C.modulus);
    if (g[0].deg() != 0) throw value_error("non-invertible element (modulus not irreducible?)");
    return from_base_poly(C, g[1]);
}

FqElem FqElem::pow(const Int& e) const {
    if (!ctx) throw value_error("pow of unattached zero");
    FqElem base_val = e < 0 ? inverse() : *this;
    Int n = abs(e);
    FqElem r = ctx->one();
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) r = r * base_val;
        base_val = base_val * base_val;
        n /= 2;
    }
    return r;
}

std::string FqElem::str() const {
    if (!ctx) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        if (!first) os << "+";
        os << coords[i].get_str();
        if (i > 0) os << "*g^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

FqCtxPtr FqCtx::prime_field(const Int& p) {
    auto c = std::make_shared<FqCtx>();
    c->p = p;
    c->rel_deg = 1;
    c->abs_deg = 1;
    return c;
}

FqCtxPtr FqCtx::extension(const FqCtxPtr& base, const Poly<FqElem>& modulus) {
    if (modulus.deg() < 2) throw value_error("extension needs degree >= 2; linear moduli are the base field");
    auto c = std::make_shared<FqCtx>();
    c->p = base->p;
    c->base = base;
    c->modulus = modulus;
    c->rel_deg = modulus.deg();
    c->abs_deg = base->abs_deg * modulus.deg();
    return c;
}

FqElem FqCtx::zero() const {
    return FqElem(shared_from_this(), std::vector<Int>(abs_deg, 0));
}

FqElem FqCtx::one() const { return from_int(1); }

FqElem FqCtx::gen() const {
    if (!base) throw value_error("prime field has no tower generator");
    std::vector<Int> v(abs_deg, 0);
    v[base->abs_deg] = 1;
    return FqElem(shared_from_this(), std::move(v));
}

FqElem FqCtx::from_int(const Int& n) const {
    std::vector<Int> v(abs_deg, 0);
    v[0] = ((n % p) + p) % p;
    return FqElem(shared_from_this(), std::move(v));
}

FqElem FqCtx::embed_base(const FqElem& v) const {
    if (!base) throw value_error("no base field to embed");
    if (!v.ctx) return zero();
    if (!v.ctx->same_as(*base)) throw value_error("embed_base: wrong source field");
    std::vector<Int> out(abs_deg, 0);
    for (size_t i = 0; i < v.coords.size(); ++i) out[i] = v.coords[i];
    return FqElem(shared_from_this(), std::move(out));
}

FqElem FqCtx::element_at(const Int& index) const {
    std::vector<Int> v(abs_deg, 0);
    Int n = index;
    for (int i = 0; i < abs_deg; ++i) {
        v[i] = n % p;
        n /= p;
    }
    return FqElem(shared_from_this(), std::move(v));
}

bool FqCtx::same_as(const FqCtx& o) const {
    if (this == &o) return true;
    if (p != o.p || abs_deg != o.abs_deg || rel_deg != o.rel_deg) return false;
    if (!base != !o.base) return false;
    if (base && !base->same_as(*o.base)) return false;
    if (base) {
        if (modulus.deg() != o.modulus.deg()) return false;
        for (int i = 0; i <= modulus.deg(); ++i)
            if (!(modulus[i] == o.modulus[i])) return false;
    }
    return true;
}

namespace {

constexpr long kEnumerationCap = 300000;

std::vector<FqElem> all_elements(const FqCtxPtr& ctx) {
    Int q = ctx->order();
    if (q > kEnumerationCap) throw unsupported_error("finite field too large to enumerate");
    std::vector<FqElem> out;
    for (Int i = 0; i < q; ++i) out.push_back(ctx->element_at(i));
    return out;
}

// x^(q^k) mod f by repeated squaring.
Poly<FqElem> frob_power_mod(const Poly<FqElem>& f, int k) {
    const FqCtxPtr& ctx = f.lc().ctx;
    Int e = pow_int(ctx->order(), k);
    Poly<FqElem> x = Poly<FqElem>::monomial(ctx->one(), 1);
    Poly<FqElem> r = Poly<FqElem>::constant(ctx->one());
    Poly<FqElem> b = divmod(x, f).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = divmod(r * b, f).second;
        b = divmod(b * b, f).second;
        e /= 2;
    }
    return r;
}

}  // namespace

bool fq_is_irreducible(const Poly<FqElem>& f) {
    int n = f.deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    const FqCtxPtr ctx = f.lc().ctx;
    Poly<FqElem> fm = make_monic(f);
    // f irreducible of degree n iff x^{q^n} = x mod f and gcd(x^{q^{n/l}} - x, f) = 1
    // for all prime divisors l of n.
    Poly<FqElem> x = Poly<FqElem>::monomial(ctx->one(), 1);
    Poly<FqElem> xn = frob_power_mod(fm, n);
    if (!(divmod(xn - x, fm).second.is_zero())) return false;
    for (int l : {2, 3, 5}) {
        if (n % l != 0) continue;
        Poly<FqElem> xk = frob_power_mod(fm, n / l);
        if (poly_gcd(xk - x, fm).deg() != 0) return false;
    }
    return true;
}

namespace {

Poly<FqElem> pow_mod(Poly<FqElem> base, Int e, const Poly<FqElem>& f) {
    const FqCtxPtr ctx = f.lc().ctx;
    Poly<FqElem> r = Poly<FqElem>::constant(ctx->one());
    base = divmod(base, f).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = divmod(r * base, f).second;
        base = divmod(base * base, f).second;
        e /= 2;
    }
    return r;
}

// roots of a product of distinct linear factors, by enumeration for small
// fields and Cantor-Zassenhaus splitting for large (odd) ones
void linear_roots(const Poly<FqElem>& L, std::vector<FqElem>& out) {
    if (L.deg() <= 0) return;
    const FqCtxPtr ctx = L.lc().ctx;
    if (L.deg() == 1) {
        out.push_back(FqElem() - L[0] * coeff_inverse(L.lc()));
        return;
    }
    Int q = ctx->order();
    if (q <= 5000) {
        for (Int i = 0; i < q; ++i) {
            FqElem a = ctx->element_at(i);
            if (L.eval(a).is_zero()) out.push_back(a);
        }
        return;
    }
    if (q % 2 == 0) throw unsupported_error("large even residue field (internal)");
    // split with gcd((x+c)^((q-1)/2) - 1, L)
    Poly<FqElem> x = Poly<FqElem>::monomial(ctx->one(), 1);
    for (Int c = 0; c < 200; ++c) {
        Poly<FqElem> shifted(std::vector<FqElem>{ctx->from_int(c), ctx->one()});
        Poly<FqElem> h = pow_mod(shifted, (q - 1) / 2, L) - Poly<FqElem>::constant(ctx->one());
        Poly<FqElem> g = poly_gcd(h, L);
        if (g.deg() > 0 && g.deg() < L.deg()) {
            linear_roots(g, out);
            linear_roots(divmod(L, g).first, out);
            return;
        }
    }
    throw precision_error("root splitting did not separate (internal)");
}

// split a product of two distinct irreducible quadratics
std::pair<Poly<FqElem>, Poly<FqElem>> split_two_quadratics(const Poly<FqElem>& f) {
    const FqCtxPtr ctx = f.lc().ctx;
    Int q = ctx->order();
    Int e = (q * q - 1) / 2;
    if (q % 2 == 0) {
        // tiny characteristic-2 fields: enumerate monic quadratics
        Int total = q * q;
        for (Int idx = 0; idx < total; ++idx) {
            std::vector<FqElem> cs = {ctx->element_at(idx % q), ctx->element_at(idx / q),
                                      ctx->one()};
            Poly<FqElem> cand(cs);
            auto [qt, rm] = divmod(f, cand);
            if (rm.is_zero()) return {cand, qt};
        }
        throw value_error("expected quadratic splitting (internal)");
    }
    for (Int c = 0; c < 400; ++c) {
        std::vector<FqElem> cs = {ctx->from_int(c), ctx->from_int(1 + c / 7), ctx->one()};
        Poly<FqElem> probe(cs);
        Poly<FqElem> h = pow_mod(probe, e, f) - Poly<FqElem>::constant(ctx->one());
        Poly<FqElem> g = poly_gcd(h, f);
        if (g.deg() == 2) return {g, divmod(f, g).first};
    }
    throw precision_error("quadratic splitting did not separate (internal)");
}

}  // namespace

std::vector<std::pair<Poly<FqElem>, int>> fq_factor(const Poly<FqElem>& f) {
    if (f.is_zero()) throw value_error("factoring zero polynomial");
    if (f.deg() == 0) return {};
    const FqCtxPtr ctx = f.lc().ctx;
    std::vector<std::pair<Poly<FqElem>, int>> out;
    Poly<FqElem> rest = make_monic(f);
    Poly<FqElem> x = Poly<FqElem>::monomial(ctx->one(), 1);
    // distinct roots from gcd(x^q - x, rest)
    Poly<FqElem> L = poly_gcd(frob_power_mod(rest, 1) - x, rest);
    std::vector<FqElem> roots;
    linear_roots(L, roots);
    for (const FqElem& a : roots) {
        Poly<FqElem> lin(std::vector<FqElem>{FqElem() - a, ctx->one()});
        int mult = 0;
        for (;;) {
            auto [qt, rm] = divmod(rest, lin);
            if (!rm.is_zero()) break;
            rest = qt;
            ++mult;
        }
        if (mult > 0) out.push_back({lin, mult});
    }
    if (rest.deg() == 0) return out;
    if (rest.deg() == 2 || rest.deg() == 3) {
        out.push_back({rest, 1});
        return out;
    }
    // rootless degree-4 (or a repeated quadratic)
    if (rest.deg() == 4) {
        Poly<FqElem> d = rest.derivative();
        if (!d.is_zero()) {
            Poly<FqElem> g = poly_gcd(rest, d);
            if (g.deg() == 2) {
                // rest = g^2 with g irreducible quadratic
                auto [qt, rm] = divmod(rest, g * g);
                if (rm.is_zero() && qt.deg() == 0) {
                    out.push_back({g, 2});
                    return out;
                }
            }
        }
        if (fq_is_irreducible(rest)) {
            out.push_back({rest, 1});
            return out;
        }
        auto [q1, q2] = split_two_quadratics(rest);
        out.push_back({make_monic(q1), 1});
        out.push_back({make_monic(q2), 1});
        return out;
    }
    if (fq_is_irreducible(rest)) {
        out.push_back({rest, 1});
        return out;
    }
    throw unsupported_error("rootless reducible factor of degree >= 5 over finite field");
}

std::vector<Poly<FqElem>> fq_monic_irreducibles(const FqCtxPtr& ctx, int d) {
    Int q = ctx->order();
    if (pow_int(q, d) > kEnumerationCap)
        throw unsupported_error("too many polynomials to enumerate");
    std::vector<Poly<FqElem>> out;
    Int total = pow_int(q, d);
    for (Int idx = 0; idx < total; ++idx) {
        std::vector<FqElem> cs(d + 1);
        Int n = idx;
        for (int i = 0; i < d; ++i) {
            cs[i] = ctx->element_at(n % q);
            n /= q;
        }
        cs[d] = ctx->one();
        Poly<FqElem> f(std::move(cs));
        if (fq_is_irreducible(f)) out.push_back(f);
    }
    return out;
}

std::string poly_str(const Poly<FqElem>& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    for (int i = f.deg(); i >= 0; --i) {
        if (f[i].is_zero()) continue;
        if (i != f.deg()) os << " + ";
        os << "(" << f[i].str() << ")";
        if (i >= 1) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace arithsurf
