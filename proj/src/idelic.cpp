#include "arithsurf/idelic.hpp"

#include <algorithm>
#include <set>

#include "arithsurf/errors.hpp"

namespace arithsurf {

FactoredFunction IdeleTriple::alpha_at(const CurveOnX& y) const {
    auto it = alpha_curve.find(y);
    if (it == alpha_curve.end()) return alpha_global;
    return alpha_global * it->second;
}

FactoredFunction IdeleTriple::beta_at(const ClosedPointOnX& x) const {
    auto it = beta_point.find(x);
    if (it == beta_point.end()) return beta_global;
    return beta_global * it->second;
}

IdeleTriple IdeleTriple::with_alpha_unit(const CurveOnX& y, const FactoredFunction& u) const {
    if (curve_valuation(y, u) != 0) throw value_error("perturbation is not a unit along the curve");
    IdeleTriple r = *this;
    auto it = r.alpha_curve.find(y);
    if (it == r.alpha_curve.end())
        r.alpha_curve.emplace(y, u);
    else
        it->second = it->second * u;
    return r;
}

IdeleTriple IdeleTriple::with_beta_unit(const ClosedPointOnX& x, const FactoredFunction& u) const {
    IdeleTriple r = *this;
    auto it = r.beta_point.find(x);
    if (it == r.beta_point.end())
        r.beta_point.emplace(x, u);
    else
        it->second = it->second * u;
    return r;
}

namespace {

bool point_on_curve(const ClosedPointOnX& x, const CurveOnX& y, int prec) {
    switch (y.kind) {
        case CurveOnX::Kind::vertical:
            return y.b == x.b;
        case CurveOnX::Kind::infinity_section:
            return x.at_infinity;
        case CurveOnX::Kind::horizontal: {
            for (const auto& p : points_of_curve_over(y, x.b, prec))
                if (p == x) return true;
            return false;
        }
    }
    return false;
}

std::vector<CurveOnX> horizontal_components(const FactoredFunction& u) {
    std::vector<CurveOnX> out;
    for (const auto& [q, e] : u.factors) out.push_back(CurveOnX::horizontal(q));
    Poly<NFElem> t_atom = Poly<NFElem>::monomial(NFElem(u.K, 1, 0), 1);
    long dtot = 0;
    for (const auto& [q, e] : u.factors) dtot += e * q.deg();
    if (dtot != 0) out.push_back(CurveOnX::infinity_section());
    return out;
}

}  // namespace

void IdeleTriple::validate(int prec) const {
    // curves of the support lattice
    std::set<CurveOnX> ys;
    for (const auto& [y, v] : alpha_curve) ys.insert(y);
    for (const auto& y : horizontal_components(alpha_global)) ys.insert(y);
    for (const auto& y : horizontal_components(beta_global)) ys.insert(y);
    for (const auto& [x, v] : beta_point) {
        std::set<CurveOnX> local = ys;
        for (const auto& y : horizontal_components(v)) local.insert(y);
        local.insert(CurveOnX::vertical(x.b));
        for (const auto& y : local) {
            if (!point_on_curve(x, y, prec)) continue;
            long m = curve_valuation(y, alpha_at(y)) + curve_valuation(y, beta_at(x));
            if (m != 0)
                throw value_error("idele membership violated at " + y.str() + " through " + x.str());
        }
    }
}

IdeleTriple identity_triple(const NumberField& K) { return IdeleTriple(K); }

DivisorOnX divisor_of(const IdeleTriple& r) {
    DivisorOnX D = divisor_of_function(r.alpha_global);
    for (const auto& [y, v] : r.alpha_curve) {
        // correct the coefficient at y to the combined valuation
        long total = curve_valuation(y, r.alpha_at(y));
        long have = D.at(y);
        D.add(y, total - have);
    }
    return D;
}

namespace {

FactoredFunction uniformizer_function(const CurveOnX& y, long m) {
    switch (y.kind) {
        case CurveOnX::Kind::horizontal:
            return FactoredFunction::one(y.h.lc().field).times_atom(y.h, m);
        case CurveOnX::Kind::vertical:
            return FactoredFunction::from_constant(y.b.uniformizer().pow(m));
        case CurveOnX::Kind::infinity_section: {
            NumberField K = y.b.field;  // unset for the infinity section
            (void)K;
            throw value_error("infinity-section components need an explicit base field");
        }
    }
    throw value_error("unknown curve kind");
}

}  // namespace

IdeleTriple canonical_lift(const DivisorOnX& D, const DivisorOnX& partner, int prec) {
    // determine the base field from any component
    const NumberField* Kp = nullptr;
    for (const auto& [y, n] : D.coeff) {
        if (y.kind == CurveOnX::Kind::horizontal) Kp = &y.h.lc().field;
        if (y.kind == CurveOnX::Kind::vertical) Kp = &y.b.field;
    }
    for (const auto& [y, n] : partner.coeff) {
        if (Kp) break;
        if (y.kind == CurveOnX::Kind::horizontal) Kp = &y.h.lc().field;
        if (y.kind == CurveOnX::Kind::vertical) Kp = &y.b.field;
    }
    if (!Kp) throw value_error("cannot infer the base field from empty divisors");
    return canonical_lift(D, partner, *Kp, prec);
}

IdeleTriple canonical_lift(const DivisorOnX& D, const DivisorOnX& partner, const NumberField& K,
                           int prec) {
    for (const auto& [y, n] : D.coeff)
        if (partner.coeff.count(y)) throw value_error("divisors share a component");
    IdeleTriple r(K);
    Poly<NFElem> t_atom = Poly<NFElem>::monomial(NFElem(K, 1, 0), 1);
    for (const auto& [y, m] : D.coeff) {
        if (y.kind == CurveOnX::Kind::infinity_section)
            r.alpha_curve.emplace(y, FactoredFunction::one(K).times_atom(t_atom, -m));
        else
            r.alpha_curve.emplace(y, uniformizer_function(y, m));
    }
    // beta: inverse local equations of D at the points where D meets the partner
    std::set<ClosedPointOnX> pts;
    for (const auto& [yD, mD] : D.coeff)
        for (const auto& [yE, mE] : partner.coeff)
            for (const auto& ip : intersection_points(yD, yE, prec)) pts.insert(ip.x);
    for (const auto& x : pts) {
        FactoredFunction l = FactoredFunction::one(K);
        for (const auto& [yD, mD] : D.coeff) {
            if (!point_on_curve(x, yD, prec)) continue;
            l = l * local_equation(yD, x).pow(-mD);
        }
        if (!l.is_one()) r.beta_point.emplace(x, l);
    }
    r.validate(prec);
    return r;
}

IdeleTriple boundary_triple(const FactoredFunction& l,
                            const std::map<CurveOnX, FactoredFunction>& m_units,
                            const std::map<ClosedPointOnX, FactoredFunction>& t_units) {
    IdeleTriple r(l.K);
    r.alpha_global = l;
    for (const auto& [y, u] : m_units) {
        if (curve_valuation(y, u) != 0) throw value_error("A1 component must be a unit along its curve");
        r.alpha_curve.emplace(y, u.inverse());
    }
    r.beta_global = l.inverse();
    for (const auto& [x, u] : t_units) r.beta_point.emplace(x, u);
    r.validate();
    return r;
}

// ---------------------------------------------------------------------------
// active support

namespace {

void collect_atoms(const FactoredFunction& u, std::vector<Poly<NFElem>>& atoms,
                   std::vector<NFElem>& consts) {
    if (!(u.constant == NFElem(u.K, 1, 0))) consts.push_back(u.constant);
    for (const auto& [q, e] : u.factors) atoms.push_back(q);
}

void primes_of_rat(const Rat& x, std::set<Int>& ps) {
    if (x == 0) return;
    for (const auto& [p, _] : factor_integer(abs(x.get_num()))) ps.insert(p);
    for (const auto& [p, _] : factor_integer(x.get_den())) ps.insert(p);
}

}  // namespace

std::vector<PrimeOfB> active_primes(const IdeleTriple& r, const IdeleTriple& s) {
    const NumberField& K = r.K;
    std::vector<Poly<NFElem>> ar, as;
    std::vector<NFElem> cr, cs;
    collect_atoms(r.alpha_global, ar, cr);
    collect_atoms(r.beta_global, ar, cr);
    for (const auto& [y, v] : r.alpha_curve) collect_atoms(v, ar, cr);
    for (const auto& [x, v] : r.beta_point) collect_atoms(v, ar, cr);
    collect_atoms(s.alpha_global, as, cs);
    collect_atoms(s.beta_global, as, cs);
    for (const auto& [y, v] : s.alpha_curve) collect_atoms(v, as, cs);
    for (const auto& [x, v] : s.beta_point) collect_atoms(v, as, cs);
    std::set<Int> ps;
    for (const auto& c : cr) primes_of_rat(c.norm(), ps);
    for (const auto& c : cs) primes_of_rat(c.norm(), ps);
    auto contents = [&](const std::vector<Poly<NFElem>>& v) {
        for (const auto& q : v) {
            Int den = 1;
            for (const auto& ci : q.c)
                den = lcm(den, lcm(Int(ci.a.get_den()), Int(ci.b.get_den())));
            for (const auto& [p, _] : factor_integer(den)) ps.insert(p);
        }
    };
    contents(ar);
    contents(as);
    for (const auto& qa : ar)
        for (const auto& qb : as) {
            if (qa == qb) continue;
            NFElem res = resultant(qa, qb);
            if (!res.is_zero()) primes_of_rat(res.norm(), ps);
        }
    // primes under stored vertical keys and point overrides
    for (const auto& [y, v] : r.alpha_curve)
        if (y.kind == CurveOnX::Kind::vertical) ps.insert(y.b.p);
    for (const auto& [y, v] : s.alpha_curve)
        if (y.kind == CurveOnX::Kind::vertical) ps.insert(y.b.p);
    for (const auto& [x, v] : r.beta_point) ps.insert(x.b.p);
    for (const auto& [x, v] : s.beta_point) ps.insert(x.b.p);
    std::vector<PrimeOfB> out;
    for (const Int& p : ps)
        for (const auto& b : factor_prime(p, K)) out.push_back(b);
    return out;
}

std::vector<Flag> active_flags(const IdeleTriple& r, const IdeleTriple& s, const PrimeOfB& b,
                               int prec) {
    std::vector<Flag> out;
    std::set<CurveOnX> ys;
    for (const auto& y : horizontal_components(s.alpha_global)) ys.insert(y);
    for (const auto& [y, v] : s.alpha_curve) ys.insert(y);
    for (const auto& y : ys) {
        if (y.kind == CurveOnX::Kind::vertical) continue;
        for (const auto& x : points_of_curve_over(y, b, prec)) out.push_back(Flag{x, y});
    }
    // vertical flags: points on the fiber where the beta side can vary
    CurveOnX Xb = CurveOnX::vertical(b);
    bool fiber_active = ys.count(Xb) || !(s.alpha_at(Xb).is_one());
    if (fiber_active) {
        std::set<ClosedPointOnX> pts;
        for (const auto& [x, v] : r.beta_point)
            if (x.b == b) pts.insert(x);
        std::vector<Poly<NFElem>> atoms;
        std::vector<NFElem> consts;
        collect_atoms(r.beta_global, atoms, consts);
        collect_atoms(s.alpha_at(Xb), atoms, consts);
        for (const auto& q : atoms)
            for (const auto& x : points_of_curve_over(CurveOnX::horizontal(q), b, prec))
                pts.insert(x);
        ClosedPointOnX inf;
        inf.b = b;
        inf.at_infinity = true;
        pts.insert(inf);
        for (const auto& x : pts) out.push_back(Flag{x, Xb});
    }
    return out;
}

long n_b(const IdeleTriple& r, const IdeleTriple& s, const PrimeOfB& b, int prec) {
    long total = 0;
    // Horizontal and infinity-section curves that can carry nonzero terms:
    // curves with s-alpha data, plus components of r's beta data (where the
    // beta valuation is nonzero against a unit gamma).  Places are iterated
    // directly so branched configurations aggregate soundly.
    std::set<CurveOnX> ys;
    for (const auto& y : horizontal_components(s.alpha_global)) ys.insert(y);
    for (const auto& [y, v] : s.alpha_curve) ys.insert(y);
    for (const auto& y : horizontal_components(r.beta_global)) ys.insert(y);
    for (const auto& [x, v] : r.beta_point)
        for (const auto& y : horizontal_components(v)) ys.insert(y);
    for (const auto& y : ys) {
        if (y.kind == CurveOnX::Kind::vertical) continue;
        FactoredFunction gamma = s.alpha_at(y);
        if (gamma.is_one()) continue;
        if (y.kind == CurveOnX::Kind::infinity_section) {
            ClosedPointOnX x;
            x.b = b;
            x.at_infinity = true;
            FactoredFunction beta = r.beta_at(x);
            if (beta.is_one()) continue;
            NFElem val = horizontal_symbol_global(y, gamma, beta);
            total += valuation_at(val, b);
            continue;
        }
        for (const auto& pl : places_above(y.h, b, prec)) {
            ClosedPointOnX x;
            x.b = b;
            x.at_infinity = pl.at_infinity;
            if (!pl.at_infinity) {
                x.minpoly = pl.point_minpoly;
                x.deg = pl.point_minpoly.deg();
            }
            FactoredFunction beta = r.beta_at(x);
            if (beta.is_one()) continue;
            total += kato_symbol_horizontal(pl, y, gamma, beta).v;
        }
    }
    // vertical flags over b
    CurveOnX Xb = CurveOnX::vertical(b);
    FactoredFunction gammaXb = s.alpha_at(Xb);
    if (!gammaXb.is_one()) {
        for (const auto& fl : active_flags(r, s, b, prec)) {
            if (!(fl.y == Xb)) continue;
            FactoredFunction beta = r.beta_at(fl.x);
            if (beta.is_one()) continue;
            total += kato_symbol_vertical(fl.x, gammaXb, beta, prec).v;
        }
    }
    return total;
}

PairingResult idelic_pairing(const IdeleTriple& r, const IdeleTriple& s, int prec) {
    PairingResult out;
    for (const auto& b : active_primes(r, s)) {
        long n = retry_with_precision([&](int pr) { return n_b(r, s, b, pr); }, prec);
        out.divisor.add(b, n);
    }
    out.cls = divisor_class_reduce(out.divisor, r.K);
    NFElem f = symmetry_correction(r, s);
    if (!(f == NFElem(r.K, 1, 0))) out.principal_correction = f;
    return out;
}

NFElem symmetry_correction(const IdeleTriple& r, const IdeleTriple& s) {
    std::set<CurveOnX> ys;
    for (const auto& y : horizontal_components(r.alpha_global)) ys.insert(y);
    for (const auto& y : horizontal_components(s.alpha_global)) ys.insert(y);
    for (const auto& [y, v] : r.alpha_curve) ys.insert(y);
    for (const auto& [y, v] : s.alpha_curve) ys.insert(y);
    NFElem f(r.K, 1, 0);
    for (const auto& y : ys) {
        if (y.kind == CurveOnX::Kind::vertical) continue;
        FactoredFunction a = r.alpha_at(y), g = s.alpha_at(y);
        if (a.is_one() || g.is_one()) continue;
        f = f * horizontal_symbol_global(y, a, g);
    }
    return f;
}

}  // namespace arithsurf
