#include "arithsurf/kato.hpp"

#include <algorithm>

#include "arithsurf/errors.hpp"

namespace arithsurf {

FlagLocalElement flag_local(const Flag& flag, const FactoredFunction& f) {
    FlagLocalElement e;
    e.flag = flag;
    e.m = curve_valuation(flag.y, f);
    switch (flag.y.kind) {
        case CurveOnX::Kind::horizontal:
            e.unit_part = f.times_atom(flag.y.h, -e.m);
            break;
        case CurveOnX::Kind::vertical:
            e.unit_part = f.times_const(flag.y.b.uniformizer().pow(-e.m));
            break;
        case CurveOnX::Kind::infinity_section: {
            Poly<NFElem> t = Poly<NFElem>::monomial(NFElem(f.K, 1, 0), 1);
            e.unit_part = f.times_atom(t, e.m);
            break;
        }
    }
    return e;
}

FactoredFunction to_infinity_chart(const FactoredFunction& f) {
    // q(t) = s^{-deg q} * q(0) * (rev q / q(0))(s), with s = 1/t; the
    // special atom t itself maps to s^{-1}
    FactoredFunction out(f.K);
    out.constant = f.constant;
    Poly<NFElem> t_atom = Poly<NFElem>::monomial(NFElem(f.K, 1, 0), 1);
    long spow = 0;
    for (const auto& [q, e] : f.factors) {
        if (q == t_atom) {
            spow -= e;
            continue;
        }
        NFElem q0 = q.coeff(0);
        if (q0.is_zero()) throw value_error("atom divisible by t is not irreducible");
        Poly<NFElem> rq = q.reversed() * q0.inverse();
        out = out.times_atom(rq, e).times_const(q0.pow(e));
        spow -= e * q.deg();
    }
    out = out.times_atom(t_atom, spow);  // the variable "t" now denotes s
    return out;
}

NFElem horizontal_symbol_global(const CurveOnX& y, const FactoredFunction& f,
                                const FactoredFunction& g) {
    long vf = curve_valuation(y, f), vg = curve_valuation(y, g);
    FactoredFunction u = f.pow(vg) * g.pow(-vf);
    if (y.kind == CurveOnX::Kind::infinity_section) {
        // k(y) = K and reduction is evaluation at infinity: the constant of
        // the s-chart form
        FactoredFunction us = to_infinity_chart(u);
        Poly<NFElem> s_atom = Poly<NFElem>::monomial(NFElem(u.K, 1, 0), 1);
        if (us.exponent_of(s_atom) != 0) throw value_error("not a unit along the infinity section");
        NFElem val = us.constant;
        for (const auto& [q, e] : us.factors) val = val * q.coeff(0).pow(e);
        if ((vf * vg) % 2 != 0) val = -val;
        return val;
    }
    if (y.kind != CurveOnX::Kind::horizontal)
        throw value_error("global symbol needs a horizontal curve");
    if (u.exponent_of(y.h) != 0) throw value_error("unit part retains a power of the curve equation");
    // N_{k(y)|K}(u(theta)) through resultants, exactly
    NFElem val = u.constant.pow(y.h.deg());
    for (const auto& [q, e] : u.factors) val = val * norm_resultant(y.h, q).pow(e);
    if ((vf * vg * y.h.deg()) % 2 != 0) val = -val;
    return val;
}

LocalNum place_norm_of_function(const PlaceAbove& pl, const FactoredFunction& u) {
    const LocalRingPtr& R = pl.ring;
    LocalNum out = R->embed(u.constant).pow(pl.factor.deg());
    for (const auto& [q, e] : u.factors) out = out * pl.local_norm(q).pow(e);
    return out;
}

LocalNum kato_symbol_horizontal(const PlaceAbove& pl, const CurveOnX& y,
                                const FactoredFunction& f, const FactoredFunction& g) {
    long vf = curve_valuation(y, f), vg = curve_valuation(y, g);
    FactoredFunction u = f.pow(vg) * g.pow(-vf);
    if (y.kind == CurveOnX::Kind::horizontal && u.exponent_of(y.h) != 0)
        throw value_error("unit part retains a power of the curve equation");
    const LocalRingPtr& R = pl.ring;
    LocalNum out = place_norm_of_function(pl, u);
    if ((vf * vg * pl.factor.deg()) % 2 != 0)
        out = out * LocalNum(0, R->zero() - R->one());
    return out;
}

FactoredLocalElement vertical_factored_form(const LocalRingPtr& R, const ClosedPointOnX& x,
                                            const FactoredFunction& f) {
    const PrimeOfB& b = x.b;
    FactoredFunction fx = x.at_infinity ? to_infinity_chart(f) : f;
    FactoredLocalElement out = FactoredLocalElement::one(R);
    out = out.times_const(R->embed(fx.constant));
    // recentre at the point: any lift of the residue class works, since
    // Weierstrass preparation only reads the reduction at the center
    LocalElem psi;
    if (x.at_infinity) {
        psi = R->zero();
    } else if (R->ext_deg > 1) {
        psi = R->psi();
    } else {
        FqElem root = FqElem() - x.minpoly[0] * coeff_inverse(x.minpoly.lc());
        psi = R->lift_residue(root);
    }
    for (const auto& [q, e] : fx.factors) {
        int c = content_at(q, b);
        Poly<NFElem> qi = q * b.uniformizer().pow(-c);
        Poly<LocalElem> Q = embed_poly(R, qi);
        Poly<LocalElem> Qs = Q.taylor_shift(psi);
        WeierstrassParts w = weierstrass_prepare(Qs);
        // q = pi_K^c * pi_R^{p_exponent} * unit_poly * distinguished
        if (c != 0) out = out.times_const(R->embed(b.uniformizer()).pow(static_cast<long>(c) * e));
        if (w.p_exponent != 0) out = out.times_const(LocalNum(w.p_exponent, R->one()).pow(e));
        if (w.distinguished.deg() >= 1) {
            SymbolAtom a;
            a.poly = w.distinguished;
            a.cert = w.distinguished.deg() == 1 ? AtomCert::degree1 : AtomCert::squarefree_weierstrass;
            out = out.times_atom(a, e);
        }
        if (w.unit_poly.deg() >= 1) {
            out = out.times_tail(w.unit_poly, e);
        } else {
            out = out.times_const(R->unit_split(w.unit_poly.coeff(0)).pow(e));
        }
    }
    return out;
}

LocalNum kato_symbol_vertical(const ClosedPointOnX& x, const FactoredFunction& f,
                              const FactoredFunction& g, int prec) {
    if (x.deg > 3) throw unsupported_error("vertical symbols need point degree <= 3");
    auto R0 = LocalRing::completion(x.b, prec);
    LocalRingPtr R = R0;
    if (!x.at_infinity && x.deg > 1) R = LocalRing::unramified_extension(R0, x.minpoly);
    FactoredLocalElement ff = vertical_factored_form(R, x, f);
    FactoredLocalElement gg = vertical_factored_form(R, x, g);
    LocalNum bd = boundary_map(ff, gg);
    return R->norm_to_base(bd);
}

LocalNum kato_symbol(const Flag& flag, const FactoredFunction& f, const FactoredFunction& g,
                     int prec) {
    const ClosedPointOnX& x = flag.x;
    const CurveOnX& y = flag.y;
    auto R0 = LocalRing::completion(x.b, prec);
    LocalNum trivial(0, R0->one());
    switch (y.kind) {
        case CurveOnX::Kind::vertical:
            if (!(y.b == x.b)) return trivial;
            return kato_symbol_vertical(x, f, g, prec);
        case CurveOnX::Kind::infinity_section: {
            if (!x.at_infinity) return trivial;
            // k(y) = K: the flag value is the global symbol read inside K_b
            return R0->embed(horizontal_symbol_global(y, f, g));
        }
        case CurveOnX::Kind::horizontal: {
            std::vector<PlaceAbove> mine;
            for (const auto& pl : places_above(y.h, x.b, prec)) {
                ClosedPointOnX px;
                px.b = pl.b;
                px.at_infinity = pl.at_infinity;
                if (!pl.at_infinity) {
                    px.minpoly = pl.point_minpoly;
                    px.deg = pl.point_minpoly.deg();
                }
                if (px == x) mine.push_back(pl);
            }
            if (mine.empty()) return trivial;
            if (mine.size() > 1) throw unsupported_error("multi-branch flags unsupported");
            return kato_symbol_horizontal(mine[0], y, f, g);
        }
    }
    throw value_error("unknown curve kind");
}

}  // namespace arithsurf
