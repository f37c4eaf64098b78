#include "arithsurf/surface.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "arithsurf/errors.hpp"

namespace arithsurf {

// ---------------------------------------------------------------------------
// factored functions

FactoredFunction FactoredFunction::from_constant(const NFElem& c) {
    if (c.is_zero()) throw value_error("zero is not a unit of the function field");
    FactoredFunction f(c.field);
    f.constant = c;
    return f;
}

FactoredFunction FactoredFunction::times_atom(const Poly<NFElem>& q, long e) const {
    FactoredFunction f = *this;
    if (e == 0) return f;
    if (q.deg() < 1) {
        f.constant = f.constant * q.coeff(0).pow(e);
        return f;
    }
    if (!(q.lc() == NFElem(1))) throw value_error("atoms must be monic");
    for (auto it = f.factors.begin(); it != f.factors.end(); ++it) {
        if (it->first == q) {
            it->second += e;
            if (it->second == 0) f.factors.erase(it);
            return f;
        }
    }
    f.factors.push_back({q, e});
    return f;
}

FactoredFunction FactoredFunction::times_const(const NFElem& c) const {
    if (c.is_zero()) throw value_error("zero constant");
    FactoredFunction f = *this;
    f.constant = f.constant * c;
    return f;
}

FactoredFunction FactoredFunction::operator*(const FactoredFunction& o) const {
    FactoredFunction f = *this;
    f.constant = f.constant * o.constant;
    for (const auto& [q, e] : o.factors) f = f.times_atom(q, e);
    return f;
}

FactoredFunction FactoredFunction::inverse() const {
    FactoredFunction f = *this;
    f.constant = f.constant.inverse();
    for (auto& [q, e] : f.factors) e = -e;
    return f;
}

FactoredFunction FactoredFunction::pow(long e) const {
    FactoredFunction f(K);
    if (e == 0) return f;
    f.constant = constant.pow(e);
    for (const auto& [q, n] : factors) f.factors.push_back({q, n * e});
    return f;
}

long FactoredFunction::exponent_of(const Poly<NFElem>& q) const {
    for (const auto& [a, e] : factors)
        if (a == q) return e;
    return 0;
}

std::pair<Poly<NFElem>, Poly<NFElem>> FactoredFunction::as_fraction() const {
    Poly<NFElem> num = Poly<NFElem>::constant(constant);
    Poly<NFElem> den = Poly<NFElem>::constant(NFElem(K, 1, 0));
    for (const auto& [q, e] : factors) {
        for (long i = 0; i < std::abs(e); ++i) {
            if (e > 0)
                num = num * q;
            else
                den = den * q;
        }
    }
    return {num, den};
}

NFElem FactoredFunction::evaluate(const NFElem& t) const {
    auto [num, den] = as_fraction();
    NFElem d = den.eval(t);
    if (d.is_zero()) throw value_error("evaluation at a pole");
    return num.eval(t) / d;
}

std::string FactoredFunction::str() const {
    std::ostringstream os;
    os << constant.str();
    for (const auto& [q, e] : factors) {
        os << " * (";
        for (int i = q.deg(); i >= 0; --i) {
            if (q[i].is_zero()) continue;
            if (i < q.deg()) os << " + ";
            os << q[i].str();
            if (i >= 1) os << "*t^" << i;
        }
        os << ")^" << e;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// curves and points

bool is_irreducible_monic(const Poly<NFElem>& q) {
    int d = q.deg();
    if (d < 1) return false;
    if (d == 1) return true;
    if (d > 4) throw unsupported_error("irreducibility testing beyond degree 4");
    const NumberField& K = q.lc().field;
    // scale to an integral monic polynomial with the same splitting behaviour
    Int m = 1;
    for (const auto& c : q.c) m = lcm(m, lcm(Int(c.a.get_den()), Int(c.b.get_den())));
    std::vector<NFElem> cs(d + 1);
    Int mk = 1;
    for (int i = d; i >= 0; --i) {
        cs[i] = q[i] * NFElem(Rat(mk));
        mk *= m;
    }
    Poly<NFElem> qi(cs);  // monic integral
    // root search: an integral root divides the constant term
    NFElem a0 = qi.coeff(0);
    if (a0.is_zero()) return false;
    Rat n0 = a0.norm();
    Int M = abs(n0.get_num());
    std::vector<Int> divisors = {1};
    for (const auto& [p, k] : factor_integer(M)) {
        std::vector<Int> next;
        Int pw = 1;
        for (int i = 0; i <= k; ++i) {
            for (const auto& dd : divisors) next.push_back(dd * pw);
            pw *= p;
        }
        divisors = next;
    }
    for (const auto& dd : divisors) {
        for (const NFElem& r : integral_elements_of_norm(dd, K)) {
            if (qi.eval(r).is_zero()) return false;
        }
    }
    // degree 4: no roots found; callers are expected to supply genuinely
    // irreducible quartics (no quadratic-factor search at desk scale)
    return true;
}

CurveOnX CurveOnX::horizontal(const Poly<NFElem>& q) {
    if (q.deg() < 1 || !(q.lc() == NFElem(1)))
        throw value_error("horizontal curve needs a monic polynomial");
    if (!is_irreducible_monic(q)) throw value_error("horizontal curve polynomial is reducible");
    CurveOnX y;
    y.kind = Kind::horizontal;
    y.h = q;
    return y;
}

CurveOnX CurveOnX::infinity_section() {
    CurveOnX y;
    y.kind = Kind::infinity_section;
    return y;
}

CurveOnX CurveOnX::vertical(const PrimeOfB& b) {
    CurveOnX y;
    y.kind = Kind::vertical;
    y.b = b;
    return y;
}

namespace {

int poly_cmp(const Poly<NFElem>& a, const Poly<NFElem>& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (int i = a.deg(); i >= 0; --i) {
        int c = cmp(a[i].a, b[i].a);
        if (c) return c;
        c = cmp(a[i].b, b[i].b);
        if (c) return c;
    }
    return 0;
}

int fqpoly_cmp(const Poly<FqElem>& a, const Poly<FqElem>& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (int i = a.deg(); i >= 0; --i) {
        // compare coordinates, treating an unattached zero as all-zero
        const auto& ca = a[i].coords;
        const auto& cb = b[i].coords;
        size_t n = std::max(ca.size(), cb.size());
        for (size_t j = 0; j < n; ++j) {
            Int xa = j < ca.size() ? ca[j] : Int(0);
            Int xb = j < cb.size() ? cb[j] : Int(0);
            if (xa != xb) return xa < xb ? -1 : 1;
        }
    }
    return 0;
}

}  // namespace

bool CurveOnX::operator==(const CurveOnX& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::horizontal:
            return poly_cmp(h, o.h) == 0;
        case Kind::infinity_section:
            return true;
        case Kind::vertical:
            return b == o.b;
    }
    return false;
}

bool CurveOnX::operator<(const CurveOnX& o) const {
    if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
    switch (kind) {
        case Kind::horizontal:
            return poly_cmp(h, o.h) < 0;
        case Kind::infinity_section:
            return false;
        case Kind::vertical:
            return b < o.b;
    }
    return false;
}

std::string CurveOnX::str() const {
    switch (kind) {
        case Kind::infinity_section:
            return "infinity";
        case Kind::vertical:
            return "fiber:" + b.str();
        case Kind::horizontal: {
            std::ostringstream os;
            os << "poly:";
            bool first = true;
            for (int i = h.deg(); i >= 0; --i) {
                if (h[i].is_zero()) continue;
                if (!first) os << "+";
                os << "(" << h[i].str() << ")";
                if (i >= 1) os << "t^" << i;
                first = false;
            }
            return os.str();
        }
    }
    return "?";
}

bool ClosedPointOnX::operator==(const ClosedPointOnX& o) const {
    return b == o.b && at_infinity == o.at_infinity &&
           (at_infinity || fqpoly_cmp(minpoly, o.minpoly) == 0);
}

bool ClosedPointOnX::operator<(const ClosedPointOnX& o) const {
    if (!(b == o.b)) return b < o.b;
    if (at_infinity != o.at_infinity) return at_infinity < o.at_infinity;
    if (at_infinity) return false;
    return fqpoly_cmp(minpoly, o.minpoly) < 0;
}

std::string ClosedPointOnX::str() const {
    std::ostringstream os;
    os << "x(" << b.str() << ",";
    if (at_infinity)
        os << "inf";
    else
        os << poly_str(minpoly);
    os << ")";
    return os.str();
}

void DivisorOnX::add(const CurveOnX& y, long n) {
    if (n == 0) return;
    auto it = coeff.find(y);
    if (it == coeff.end()) {
        coeff.emplace(y, n);
    } else {
        it->second += n;
        if (it->second == 0) coeff.erase(it);
    }
}

DivisorOnX DivisorOnX::operator+(const DivisorOnX& o) const {
    DivisorOnX r = *this;
    for (const auto& [y, n] : o.coeff) r.add(y, n);
    return r;
}

DivisorOnX DivisorOnX::operator-(const DivisorOnX& o) const {
    DivisorOnX r = *this;
    for (const auto& [y, n] : o.coeff) r.add(y, -n);
    return r;
}

DivisorOnX DivisorOnX::operator*(long n) const {
    DivisorOnX r;
    if (n == 0) return r;
    for (const auto& [y, m] : coeff) r.add(y, m * n);
    return r;
}

long DivisorOnX::at(const CurveOnX& y) const {
    auto it = coeff.find(y);
    return it == coeff.end() ? 0 : it->second;
}

std::string DivisorOnX::str() const {
    if (coeff.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [y, n] : coeff) {
        if (!first) os << " + ";
        os << n << "*[" << y.str() << "]";
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// valuations and divisors of functions

int content_at(const Poly<NFElem>& q, const PrimeOfB& b) {
    int c = 0;
    for (const auto& ci : q.c)
        if (!ci.is_zero()) c = std::min(c, valuation_at(ci, b));
    return c;
}

long curve_valuation(const CurveOnX& y, const FactoredFunction& u) {
    switch (y.kind) {
        case CurveOnX::Kind::horizontal:
            return u.exponent_of(y.h);
        case CurveOnX::Kind::infinity_section: {
            long d = 0;
            for (const auto& [q, e] : u.factors) d += e * q.deg();
            return -d;
        }
        case CurveOnX::Kind::vertical: {
            long v = valuation_at(u.constant, y.b);
            for (const auto& [q, e] : u.factors) v += e * content_at(q, y.b);
            return v;
        }
    }
    return 0;
}

DivisorOnX divisor_of_function(const FactoredFunction& u) {
    DivisorOnX D;
    long dtot = 0;
    for (const auto& [q, e] : u.factors) {
        D.add(CurveOnX::horizontal(q), e);
        dtot += e * q.deg();
    }
    D.add(CurveOnX::infinity_section(), -dtot);
    // vertical components live over primes dividing the constant or the
    // coefficient denominators
    std::set<Int> ps;
    if (!(u.constant == NFElem(u.K, 1, 0))) {
        Rat n = u.constant.norm();
        for (const auto& [p, _] : factor_integer(abs(n.get_num()))) ps.insert(p);
        for (const auto& [p, _] : factor_integer(n.get_den())) ps.insert(p);
    }
    for (const auto& [q, e] : u.factors) {
        Int den = 1;
        for (const auto& ci : q.c) den = lcm(den, lcm(Int(ci.a.get_den()), Int(ci.b.get_den())));
        for (const auto& [p, _] : factor_integer(den)) ps.insert(p);
    }
    for (const Int& p : ps) {
        for (const auto& b : factor_prime(p, u.K)) {
            CurveOnX Xb = CurveOnX::vertical(b);
            D.add(Xb, curve_valuation(Xb, u));
        }
    }
    return D;
}

FactoredFunction local_equation(const CurveOnX& y, const ClosedPointOnX& x) {
    const NumberField& K = x.b.field;
    switch (y.kind) {
        case CurveOnX::Kind::vertical:
            if (!(y.b == x.b)) throw value_error("point not on the fiber");
            return FactoredFunction::from_constant(x.b.uniformizer());
        case CurveOnX::Kind::infinity_section: {
            if (!x.at_infinity) throw value_error("point not on the infinity section");
            Poly<NFElem> t = Poly<NFElem>::monomial(NFElem(K, 1, 0), 1);
            return FactoredFunction::one(K).times_atom(t, -1);
        }
        case CurveOnX::Kind::horizontal: {
            int c = content_at(y.h, x.b);
            FactoredFunction l = FactoredFunction::one(K).times_atom(y.h, 1).times_const(
                x.b.uniformizer().pow(-c));
            if (x.at_infinity) {
                Poly<NFElem> t = Poly<NFElem>::monomial(NFElem(K, 1, 0), 1);
                l = l.times_atom(t, -y.h.deg());
            }
            return l;
        }
    }
    throw value_error("unknown curve kind");
}

// ---------------------------------------------------------------------------
// intersections

namespace {

ClosedPointOnX point_of_place(const PlaceAbove& pl) {
    ClosedPointOnX x;
    x.b = pl.b;
    x.at_infinity = pl.at_infinity;
    if (!pl.at_infinity) {
        x.minpoly = pl.point_minpoly;
        x.deg = pl.point_minpoly.deg();
    } else {
        x.deg = 1;
    }
    return x;
}

std::vector<Int> rational_primes_of(const Rat& x) {
    std::vector<Int> out;
    if (x == 0) return out;
    for (const auto& [p, _] : factor_integer(abs(x.get_num()))) out.push_back(p);
    for (const auto& [p, _] : factor_integer(x.get_den())) out.push_back(p);
    return out;
}

}  // namespace

// place valuation of a factored function along the curve carrying the place
int place_val_of_function(const PlaceAbove& pl, const FactoredFunction& u) {
    long v = 0;
    if (!(u.constant == NFElem(u.K, 1, 0)))
        v += static_cast<long>(pl.e) * valuation_at(u.constant, pl.b);
    for (const auto& [q, e] : u.factors) v += e * pl.val_of(q);
    return static_cast<int>(v);
}

std::vector<PrimeOfB> meeting_primes(const CurveOnX& D, const CurveOnX& E) {
    const NumberField* K = nullptr;
    std::set<Int> ps;
    auto content_primes = [&](const CurveOnX& y) {
        if (y.kind != CurveOnX::Kind::horizontal) return;
        Int den = 1;
        for (const auto& ci : y.h.c) den = lcm(den, lcm(Int(ci.a.get_den()), Int(ci.b.get_den())));
        for (const auto& [p, _] : factor_integer(den)) ps.insert(p);
    };
    if (D.kind == CurveOnX::Kind::vertical) {
        K = &D.b.field;
        ps.insert(D.b.p);
    }
    if (E.kind == CurveOnX::Kind::vertical) {
        K = &E.b.field;
        ps.insert(E.b.p);
    }
    if (D.kind == CurveOnX::Kind::horizontal && E.kind == CurveOnX::Kind::horizontal) {
        K = &D.h.lc().field;
        NFElem res = resultant(D.h, E.h);
        if (res.is_zero()) throw value_error("curves share a component");
        for (const Int& p : rational_primes_of(res.norm())) ps.insert(p);
    }
    content_primes(D);
    content_primes(E);
    if (!K) {
        if (D.kind == CurveOnX::Kind::horizontal)
            K = &D.h.lc().field;
        else if (E.kind == CurveOnX::Kind::horizontal)
            K = &E.h.lc().field;
    }
    std::vector<PrimeOfB> out;
    if (!K) return out;
    for (const Int& p : ps)
        for (const auto& b : factor_prime(p, *K)) out.push_back(b);
    return out;
}

std::vector<IntersectionPoint> intersection_points(const CurveOnX& D, const CurveOnX& E,
                                                   int prec) {
    if (D == E) throw value_error("divisors share a component");
    using Kind = CurveOnX::Kind;
    std::vector<IntersectionPoint> out;
    if (D.kind == Kind::vertical && E.kind == Kind::vertical) {
        if (D.b == E.b) throw value_error("divisors share a component");
        return out;
    }
    // the infinity section against a fiber meets at the fiber's infinity point
    if (D.kind == Kind::infinity_section && E.kind == Kind::vertical) {
        IntersectionPoint ip;
        ip.x.b = E.b;
        ip.x.at_infinity = true;
        ip.i_x = 1;
        ip.weight = 1;
        out.push_back(ip);
        return out;
    }
    if (E.kind == Kind::infinity_section && D.kind == Kind::vertical)
        return intersection_points(E, D, prec);
    // put a horizontal curve first
    if (D.kind != Kind::horizontal) return intersection_points(E, D, prec);
    if (E.kind == Kind::vertical) {
        for (const auto& pl : places_above(D.h, E.b, prec)) {
            IntersectionPoint ip;
            ip.x = point_of_place(pl);
            ip.i_x = pl.e;  // place valuation of the fiber's local equation
            ip.weight = pl.f;
            ip.place = pl;
            ip.has_place = true;
            out.push_back(ip);
        }
        return out;
    }
    // horizontal against horizontal or the infinity section
    for (const auto& b : meeting_primes(D, E)) {
        for (const auto& pl : places_above(D.h, b, prec)) {
            ClosedPointOnX x = point_of_place(pl);
            if (E.kind == Kind::infinity_section && !x.at_infinity) continue;
            FactoredFunction le = local_equation(E, x);
            int i = place_val_of_function(pl, le);
            if (i <= 0) continue;
            IntersectionPoint ip;
            ip.x = x;
            ip.i_x = i;
            ip.weight = pl.f;
            ip.place = pl;
            ip.has_place = true;
            out.push_back(ip);
        }
    }
    return out;
}

DivisorOnB deligne_divisor(const CurveOnX& D, const CurveOnX& E, int prec) {
    DivisorOnB out;
    for (const auto& ip : intersection_points(D, E, prec)) out.add(ip.x.b, ip.weight * ip.i_x);
    return out;
}

DivisorOnB deligne_divisor(const DivisorOnX& D, const DivisorOnX& E, int prec) {
    for (const auto& [y, n] : D.coeff)
        if (E.coeff.count(y)) throw value_error("divisors share a component");
    DivisorOnB out;
    for (const auto& [yD, nD] : D.coeff)
        for (const auto& [yE, nE] : E.coeff) {
            DivisorOnB part = deligne_divisor(yD, yE, prec);
            out = out + part * (nD * nE);
        }
    return out;
}

DivisorOnB pushforward_principal(const CurveOnX& D, const Poly<NFElem>& f) {
    if (f.is_zero()) throw value_error("pushforward of zero");
    if (D.kind == CurveOnX::Kind::infinity_section) {
        if (f.deg() > 0) throw value_error("function field of the infinity section is K");
        return principal_divisor(f[0]);
    }
    if (D.kind != CurveOnX::Kind::horizontal)
        throw value_error("pushforward_principal expects a horizontal curve");
    NFElem nrm = norm_resultant(D.h, f);
    return principal_divisor(nrm);
}

std::vector<ClosedPointOnX> points_of_curve_over(const CurveOnX& y, const PrimeOfB& b, int prec) {
    std::vector<ClosedPointOnX> out;
    switch (y.kind) {
        case CurveOnX::Kind::infinity_section: {
            ClosedPointOnX x;
            x.b = b;
            x.at_infinity = true;
            out.push_back(x);
            return out;
        }
        case CurveOnX::Kind::vertical:
            throw unsupported_error("enumerating all points of a fiber requires a degree bound");
        case CurveOnX::Kind::horizontal: {
            std::vector<ClosedPointOnX> pts;
            for (const auto& pl : places_above(y.h, b, prec)) pts.push_back(point_of_place(pl));
            std::sort(pts.begin(), pts.end());
            for (size_t i = 0; i < pts.size(); ++i) {
                if (i > 0 && pts[i] == pts[i - 1]) continue;
                out.push_back(pts[i]);
            }
            return out;
        }
    }
    return out;
}

std::vector<ClosedPointOnX> fiber_points(const PrimeOfB& b, int maxdeg) {
    std::vector<ClosedPointOnX> out;
    auto kb = residue_field(b);
    for (int d = 1; d <= maxdeg; ++d) {
        for (const auto& m : fq_monic_irreducibles(kb, d)) {
            ClosedPointOnX x;
            x.b = b;
            x.minpoly = m;
            x.deg = d;
            out.push_back(x);
        }
    }
    ClosedPointOnX inf;
    inf.b = b;
    inf.at_infinity = true;
    out.push_back(inf);
    return out;
}

}  // namespace arithsurf
