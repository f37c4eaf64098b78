#include "arithsurf/padic.hpp"

#include <algorithm>
#include <climits>

#include "arithsurf/errors.hpp"

namespace arithsurf {

namespace {

// exact division by pi^k; pi^2 = p * u0 with u0 a unit
LocalElem div_pi_exact(const LocalElem& z, int k) {
    if (k == 0) return z;
    if (k < 0) throw value_error("div_pi_exact: negative power");
    const LocalRing& R = *z.R;
    if (R.e == 1) return z.div_p(k);
    LocalElem pi = R.uniformizer();
    LocalElem u0 = (pi * pi).div_p(1);
    if (k % 2 == 0) return z.div_p(k / 2) * u0.inverse().pow(k / 2);
    int half = (k + 1) / 2;
    return (z * pi).div_p(half) * u0.inverse().pow(half);
}

LocalElem scale_coeff(const LocalElem& x, int m) {
    if (!x.R) return x;
    if (m >= 0) return x * x.R->pi_pow(m);
    return div_pi_exact(x, -m);
}

Poly<LocalElem> scale_poly_pi(const Poly<LocalElem>& f, int k) {
    std::vector<LocalElem> c = f.c;
    for (auto& x : c) x = scale_coeff(x, k);
    return Poly<LocalElem>(std::move(c));
}

bool coeff_below_precision(const LocalElem& x) {
    return !x.R || x.stored_zero() || !x.val_opt();
}

bool poly_below_precision(const Poly<LocalElem>& f) {
    for (const auto& x : f.c)
        if (!coeff_below_precision(x)) return false;
    return true;
}

bool poly_negligible(const Poly<LocalElem>& f, int margin = 6) {
    for (const auto& x : f.c)
        if (!x.negligible(margin)) return false;
    return true;
}

Poly<FqElem> fq_pow(const Poly<FqElem>& f, int k) {
    Poly<FqElem> r = Poly<FqElem>::constant(f.lc().ctx->one());
    for (int i = 0; i < k; ++i) r = r * f;
    return r;
}

}  // namespace

int poly_content_val(const Poly<LocalElem>& f) {
    int c = INT_MAX;
    for (const auto& x : f.c) {
        if (coeff_below_precision(x)) continue;
        c = std::min(c, x.val());
    }
    if (c == INT_MAX) throw precision_error("polynomial indistinguishable from zero");
    return c;
}

std::pair<Poly<LocalElem>, Poly<LocalElem>> hensel_split(const Poly<LocalElem>& P,
                                                         const Poly<FqElem>& Gbar,
                                                         const Poly<FqElem>& Hbar) {
    LocalRingPtr R;
    for (const auto& x : P.c)
        if (x.R) {
            R = x.R;
            break;
        }
    if (!R) throw value_error("hensel_split of zero polynomial");
    auto xg = poly_xgcd(Gbar, Hbar);
    if (xg[0].deg() != 0) throw value_error("hensel_split: factors not coprime");
    FqElem inv = xg[0][0].inverse();
    Poly<FqElem> T = xg[2] * inv;  // with S*Gbar + T*Hbar = 1
    Poly<LocalElem> G = lift_poly(R, Gbar);
    Poly<LocalElem> H = lift_poly(R, Hbar);
    int target = R->e * (R->M - 2);
    int guard = R->e * R->M + 8;
    while (guard-- > 0) {
        Poly<LocalElem> E = P - G * H;
        if (E.is_zero() || poly_below_precision(E)) break;
        int m = poly_content_val(E);
        if (m >= target) break;
        Poly<FqElem> Ebar = reduce_poly(scale_poly_pi(E, -m));
        Poly<FqElem> gbar = divmod(T * Ebar, Gbar).second;
        auto [hbar, rem] = divmod(Ebar - gbar * Hbar, Gbar);
        if (!rem.is_zero()) throw value_error("hensel_split: inexact correction (internal)");
        G = G + scale_poly_pi(lift_poly(R, gbar), m);
        H = H + scale_poly_pi(lift_poly(R, hbar), m);
    }
    Poly<LocalElem> E = P - G * H;
    if (!(E.is_zero() || poly_below_precision(E) || poly_content_val(E) >= target))
        throw precision_error("hensel_split did not converge");
    return {G, H};
}

WeierstrassParts weierstrass_prepare(const Poly<LocalElem>& q) {
    if (q.is_zero()) throw value_error("weierstrass_prepare of zero");
    LocalRingPtr R;
    for (const auto& x : q.c)
        if (x.R) {
            R = x.R;
            break;
        }
    if (!R) throw value_error("weierstrass_prepare of zero");
    int c = poly_content_val(q);
    Poly<LocalElem> qt = scale_poly_pi(q, -c);
    Poly<FqElem> qbar = reduce_poly(qt);
    int mu = 0;
    while (mu <= qbar.deg() && qbar.coeff(mu).is_zero()) ++mu;
    WeierstrassParts out;
    out.p_exponent = c;
    if (mu == 0) {
        out.unit_poly = qt;
        out.distinguished = Poly<LocalElem>::constant(R->one());
        return out;
    }
    if (mu > qbar.deg()) throw precision_error("reduction vanished in weierstrass_prepare");
    std::vector<FqElem> cof(qbar.deg() - mu + 1);
    for (int i = mu; i <= qbar.deg(); ++i) cof[i - mu] = qbar[i];
    Poly<FqElem> Hbar(std::move(cof));
    Poly<FqElem> Gbar = Poly<FqElem>::monomial(Hbar.unit_like(), mu);
    auto [W, U] = hensel_split(qt, Gbar, Hbar);
    out.distinguished = W;
    out.unit_poly = U;
    return out;
}

namespace {

struct HullSegment {
    int i0 = 0, i1 = 0;  // column span
    Int dv;              // total valuation drop over the span
    bool integral_slope() const { return dv % (i1 - i0) == 0; }
};

// lower Newton hull; pts = (i, v_i) sorted by i
std::vector<HullSegment> newton_hull(const std::vector<std::pair<int, int>>& pts) {
    std::vector<std::pair<long, long>> h;
    for (const auto& [i, v] : pts) {
        while (h.size() >= 2) {
            auto [x1, y1] = h[h.size() - 2];
            auto [x2, y2] = h[h.size() - 1];
            if ((y2 - y1) * (i - x2) >= (v - y2) * (x2 - x1))
                h.pop_back();
            else
                break;
        }
        h.push_back({i, v});
    }
    std::vector<HullSegment> segs;
    for (size_t k = 0; k + 1 < h.size(); ++k) {
        HullSegment s;
        s.i0 = static_cast<int>(h[k].first);
        s.i1 = static_cast<int>(h[k + 1].first);
        s.dv = h[k].second - h[k + 1].second;
        segs.push_back(s);
    }
    return segs;
}

std::vector<LocalFactor> factor_rec(const LocalRingPtr& R, const Poly<LocalElem>& P, int depth);

// P monic with reduction T^n, n >= 2
std::vector<LocalFactor> factor_distinguished(const LocalRingPtr& R, const Poly<LocalElem>& P,
                                              int depth) {
    if (depth > 64) throw precision_error("local factorization recursion too deep");
    int n = P.deg();
    if (P[0].stored_zero()) {
        // exact T-factor (squarefree input, so only one)
        Poly<LocalElem> lin = Poly<LocalElem>::monomial(R->one(), 1);
        auto [Q, rem] = divmod_monic(P, lin);
        LocalFactor f1;
        f1.poly = lin;
        f1.cert = FactorCert::degree1;
        std::vector<LocalFactor> out = {f1};
        for (auto& f2 : factor_rec(R, Q, depth + 1)) out.push_back(std::move(f2));
        return out;
    }
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i <= n; ++i) {
        if (coeff_below_precision(P.coeff(i))) {
            if (i == 0) throw precision_error("constant term indistinguishable from zero");
            continue;
        }
        pts.push_back({i, P[i].val()});
    }
    auto segs = newton_hull(pts);
    if (segs.size() == 1) {
        Int num = segs[0].dv;
        int den = segs[0].i1 - segs[0].i0;
        Int g = gcd(num, Int(den));
        if (den == n && g == 1) {
            LocalFactor f;
            f.poly = P;
            f.e = n;
            f.f = 1;
            f.cert = FactorCert::newton_slope;
            return {f};
        }
    }
    std::vector<int> hs;
    for (const auto& s : segs) {
        if (!s.integral_slope()) continue;
        int h = static_cast<int>(Int(s.dv / (s.i1 - s.i0)).get_si());
        if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(h);
    }
    auto residual_at = [&](int h) {
        long minC = LONG_MAX;
        for (const auto& [i, v] : pts) minC = std::min(minC, static_cast<long>(v) + long(h) * i);
        std::vector<LocalElem> sc(n + 1, R->zero());
        for (int i = 0; i <= n; ++i) {
            if (coeff_below_precision(P.coeff(i))) continue;
            sc[i] = scale_coeff(P[i], static_cast<int>(long(h) * i - minC));
        }
        return Poly<LocalElem>(std::move(sc));
    };
    for (int h : hs) {
        Poly<LocalElem> g_scaled = residual_at(h);
        Poly<FqElem> gbar = reduce_poly(g_scaled);
        if (segs.size() == 1 && gbar.deg() == n && !gbar.coeff(0).is_zero() && n <= 4 &&
            fq_is_irreducible(gbar)) {
            LocalFactor f;
            f.poly = P;
            f.e = 1;
            f.f = n;
            f.cert = FactorCert::scaled_unramified;
            return {f};
        }
        for (const auto& [fac, mult] : fq_factor(gbar)) {
            if (fac.deg() != 1 || mult != 1) continue;
            FqElem root = FqElem() - fac[0];
            if (root.is_zero()) continue;
            LocalElem u = R->lift_residue(root);
            Poly<LocalElem> dg = g_scaled.derivative();
            for (int it = 0; it < 64; ++it) {
                LocalElem fu = g_scaled.eval(u);
                if (coeff_below_precision(fu)) break;
                u = u - fu * dg.eval(u).inverse();
            }
            LocalElem r = R->pi_pow(h) * u;
            Poly<LocalElem> lin(std::vector<LocalElem>{R->zero() - r, R->one()});
            auto [Q, rem] = divmod_monic(P, lin);
            if (!poly_negligible(rem)) throw precision_error("deflation by lifted root failed");
            LocalFactor f1;
            f1.poly = lin;
            f1.cert = FactorCert::degree1;
            std::vector<LocalFactor> out = {f1};
            for (auto& f2 : factor_rec(R, Q, depth + 1)) out.push_back(std::move(f2));
            return out;
        }
    }
    // no simple residual roots: shift into a root cluster at an integer slope
    for (int h : hs) {
        Poly<FqElem> gbar = reduce_poly(residual_at(h));
        for (const auto& [fac, mult] : fq_factor(gbar)) {
            if (fac.deg() != 1 || mult < 2) continue;
            FqElem root = FqElem() - fac[0];
            if (root.is_zero()) continue;
            LocalElem shift = R->pi_pow(h) * R->lift_residue(root);
            Poly<LocalElem> P1 = P.taylor_shift(shift);
            auto sub = factor_distinguished(R, P1, depth + 1);
            for (auto& f : sub) f.poly = f.poly.taylor_shift(R->zero() - shift);
            return sub;
        }
    }
    throw unsupported_error("local factor outside the certificate classes");
}

std::vector<LocalFactor> factor_rec(const LocalRingPtr& R, const Poly<LocalElem>& P, int depth) {
    if (depth > 64) throw precision_error("local factorization recursion too deep");
    int n = P.deg();
    if (n <= 0) return {};
    if (n == 1) {
        LocalFactor f;
        f.poly = P;
        f.cert = FactorCert::degree1;
        return {f};
    }
    Poly<FqElem> Pbar = reduce_poly(P);
    auto facs = fq_factor(Pbar);
    if (facs.size() >= 2) {
        Poly<FqElem> Gbar = fq_pow(facs[0].first, facs[0].second);
        auto [Hbar, rem] = divmod(Pbar, Gbar);
        if (!rem.is_zero()) throw value_error("reduction split mismatch (internal)");
        auto [G, H] = hensel_split(P, Gbar, Hbar);
        auto out = factor_rec(R, G, depth + 1);
        for (auto& f : factor_rec(R, H, depth + 1)) out.push_back(std::move(f));
        return out;
    }
    const auto& [mbar, mult] = facs[0];
    if (mult == 1) {
        LocalFactor f;
        f.poly = P;
        f.e = 1;
        f.f = n;
        f.cert = FactorCert::unramified;
        return {f};
    }
    if (mbar.deg() > 1) throw unsupported_error("repeated nonlinear residue factor at desk scale");
    FqElem cbar = FqElem() - mbar[0];
    LocalElem c = R->lift_residue(cbar);
    Poly<LocalElem> P1 = P.taylor_shift(c);
    auto sub = factor_distinguished(R, P1, depth);
    for (auto& f : sub) f.poly = f.poly.taylor_shift(R->zero() - c);
    return sub;
}

}  // namespace

std::vector<LocalFactor> hensel_factor_over(const LocalRingPtr& R, const Poly<LocalElem>& P) {
    if (P.deg() < 1) throw value_error("factoring a constant");
    Poly<LocalElem> Pm = P;
    if (!(P.lc() - P.lc().R->one()).stored_zero()) {
        if (P.lc().val() != 0) throw value_error("non-integral leading coefficient");
        Pm = P * P.lc().inverse();
    }
    auto out = factor_rec(R, Pm, 0);
    int total = 0;
    for (const auto& f : out) total += f.poly.deg();
    if (total != P.deg()) throw value_error("factor degrees do not add up (internal)");
    return out;
}

std::vector<LocalFactor> hensel_factor(const Poly<NFElem>& P, const PrimeOfB& b, int prec) {
    if (P.deg() < 1) throw value_error("factoring a constant");
    if (!(P.lc() == NFElem(1))) throw value_error("hensel_factor expects a monic polynomial");
    if (poly_gcd(P, P.derivative()).deg() != 0) throw value_error("not squarefree");
    for (const auto& ci : P.c)
        if (!ci.is_zero() && valuation_at(ci, b) < 0)
            throw value_error("hensel_factor expects b-integral coefficients");
    auto R = LocalRing::completion(b, prec);
    return hensel_factor_over(R, embed_poly(R, P));
}

namespace {

Poly<FqElem> radical_of_reduction(const Poly<LocalElem>& f) {
    auto facs = fq_factor(reduce_poly(f));
    if (facs.size() != 1) throw value_error("factor reduction is not a prime power (internal)");
    return facs[0].first;
}

}  // namespace

LocalNum PlaceAbove::local_norm(const Poly<NFElem>& g) const {
    if (g.is_zero()) throw value_error("norm of zero");
    const LocalRingPtr& R = ring;
    int cg = INT_MAX;
    for (const auto& ci : g.c)
        if (!ci.is_zero()) cg = std::min(cg, valuation_at(ci, b));
    NFElem w = b.uniformizer().pow(-cg);
    Poly<NFElem> gt = g * w;
    int d = factor.deg();
    LocalNum total = R->embed(b.uniformizer()).pow(static_cast<long>(cg) * d);
    if (!at_infinity) {
        LocalElem res = resultant_monic(factor, embed_poly(R, gt));
        return total * R->unit_split(res);
    }
    // theta = 1/rho: N(gt(theta)) = Res(V, rev gt) / (prod rho)^{deg gt}
    Poly<NFElem> rev = gt.reversed();
    LocalElem res = resultant_monic(factor, embed_poly(R, rev));
    LocalElem prod_rho = factor.coeff(0);
    if (d % 2 == 1) prod_rho = R->zero() - prod_rho;
    return total * R->unit_split(res) * R->unit_split(prod_rho).pow(-gt.deg());
}

int PlaceAbove::vb_norm_of(const Poly<NFElem>& g) const { return local_norm(g).v; }

int PlaceAbove::val_of(const Poly<NFElem>& g) const {
    int vb = vb_norm_of(g);
    if (vb % f != 0) throw value_error("norm valuation not divisible by f (internal)");
    return vb / f;
}

std::vector<PlaceAbove> places_above(const Poly<NFElem>& h, const PrimeOfB& b, int prec) {
    if (h.deg() < 1) throw value_error("places of a constant");
    if (!(h.lc() == NFElem(1))) throw value_error("places_above expects a monic polynomial");
    auto R = LocalRing::completion(b, prec);
    int c = 0;
    for (const auto& ci : h.c)
        if (!ci.is_zero()) c = std::min(c, valuation_at(ci, b));
    std::vector<PlaceAbove> out;
    auto push_factors = [&](const std::vector<LocalFactor>& facs, bool at_inf) {
        for (const auto& fac : facs) {
            PlaceAbove pl;
            pl.b = b;
            pl.h_global = h;
            pl.factor = fac.poly;
            pl.at_infinity = at_inf;
            pl.e = fac.e;
            pl.f = fac.f;
            pl.cert = fac.cert;
            pl.ring = R;
            pl.point_minpoly = radical_of_reduction(fac.poly);
            out.push_back(std::move(pl));
        }
    };
    if (c == 0) {
        push_factors(hensel_factor_over(R, embed_poly(R, h)), false);
    } else {
        NFElem w = b.uniformizer().pow(-c);
        Poly<NFElem> hs = h * w;  // integral, primitive, non-unit leading coefficient
        Poly<LocalElem> A = embed_poly(R, hs);
        Poly<LocalElem> revA = A.reversed();
        Poly<FqElem> rbar = reduce_poly(revA);
        int mu = 0;
        while (mu <= rbar.deg() && rbar.coeff(mu).is_zero()) ++mu;
        if (mu == 0 || mu > rbar.deg()) throw precision_error("infinite-part separation failed");
        std::vector<FqElem> cof(rbar.deg() - mu + 1);
        for (int i = mu; i <= rbar.deg(); ++i) cof[i - mu] = rbar[i];
        Poly<FqElem> Hbar(std::move(cof));
        Poly<FqElem> Gbar = Poly<FqElem>::monomial(Hbar.unit_like(), mu);
        auto [V, Urev] = hensel_split(revA, Gbar, Hbar);
        Poly<LocalElem> F = Urev.reversed();
        if (F.deg() >= 1) {
            Poly<LocalElem> Fm = F * F.lc().inverse();
            push_factors(hensel_factor_over(R, Fm), false);
        }
        push_factors(hensel_factor_over(R, V), true);
    }
    int total = 0;
    for (const auto& pl : out) total += pl.e * pl.f;
    if (total != h.deg()) throw value_error("place degrees do not add up (internal)");
    return out;
}

}  // namespace arithsurf
