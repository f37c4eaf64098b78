#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithsurf/errors.hpp"
#include "arithsurf/kato.hpp"
#include "testutil.hpp"

using namespace arithsurf;
using arithsurf::testing::Rng;

namespace {

Poly<NFElem> qpoly(std::vector<long> coeffs) {
    std::vector<NFElem> c;
    for (long v : coeffs) c.push_back(NFElem(v));
    return Poly<NFElem>(std::move(c));
}

FactoredFunction atom_fn(const NumberField& K, const Poly<NFElem>& q, long e = 1) {
    return FactoredFunction::one(K).times_atom(q, e);
}

// all flags through x carrying possibly-nontrivial symbols of f, g
std::vector<Flag> active_flags_through(const ClosedPointOnX& x, const FactoredFunction& f,
                                       const FactoredFunction& g) {
    std::set<CurveOnX> ys;
    for (const auto& [y, n] : divisor_of_function(f).coeff) ys.insert(y);
    for (const auto& [y, n] : divisor_of_function(g).coeff) ys.insert(y);
    ys.insert(CurveOnX::vertical(x.b));
    std::vector<Flag> out;
    for (const auto& y : ys) {
        if (y.kind == CurveOnX::Kind::vertical && !(y.b == x.b)) continue;
        out.push_back(Flag{x, y});
    }
    return out;
}

}  // namespace

TEST_CASE("horizontal flag symbol spec cases") {
    NumberField Q = NumberField::Q();
    // y: t = 0, flag over (5); f = t, g = t - 5
    auto y = CurveOnX::horizontal(qpoly({0, 1}));
    FactoredFunction f = atom_fn(Q, qpoly({0, 1}));
    FactoredFunction g = atom_fn(Q, qpoly({-5, 1}));
    CHECK(horizontal_symbol_global(y, f, g) == NFElem(Rat(-1, 5)));
    CHECK(horizontal_symbol_global(y, g, f) == NFElem(-5));
    // both units along y: symbol 1
    FactoredFunction u1 = atom_fn(Q, qpoly({-1, 1}));
    FactoredFunction u2 = atom_fn(Q, qpoly({-2, 1}));
    CHECK(horizontal_symbol_global(y, u1, u2) == NFElem(1));
    // flag-local value agrees through the single place over (5)
    auto b5 = prime_above(5, Q);
    auto places = places_above(qpoly({0, 1}), b5, 48);
    REQUIRE(places.size() == 1);
    LocalNum loc = kato_symbol_horizontal(places[0], y, f, g);
    CHECK(loc.v == -1);
}

TEST_CASE("vertical flag symbol spec cases") {
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    // rational point t = 0 on the fiber over 5
    ClosedPointOnX x;
    x.b = b5;
    x.minpoly = Poly<FqElem>::monomial(residue_field(b5)->one(), 1);
    x.deg = 1;
    FactoredFunction f5 = FactoredFunction::from_constant(NFElem(5));
    FactoredFunction ft = atom_fn(Q, qpoly({0, 1}));
    LocalNum s1 = kato_symbol_vertical(x, f5, ft, 48);
    CHECK(s1.v == -1);
    LocalNum s2 = kato_symbol_vertical(x, ft, f5, 48);
    CHECK(s2.v == 1);
    // the value is exactly 5 = pi * 1
    CHECK((s2.u - s2.u.R->one()).negligible());
    // unit-unit pairs with empty support evaluate to 1
    FactoredFunction u1 = FactoredFunction::from_constant(NFElem(3));
    FactoredFunction u2 = atom_fn(Q, qpoly({-1, 1}));
    LocalNum s3 = kato_symbol_vertical(x, u1, u2, 48);
    CHECK(s3.v == 0);
    CHECK((s3.u - s3.u.R->one()).negligible());
}

TEST_CASE("kato_symbol dispatch and trivial flags") {
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    ClosedPointOnX x;
    x.b = b5;
    x.minpoly = Poly<FqElem>::monomial(residue_field(b5)->one(), 1);
    x.deg = 1;
    FactoredFunction one = FactoredFunction::one(Q);
    // f = g = 1 at any flag: 1
    for (const auto& y : {CurveOnX::horizontal(qpoly({0, 1})), CurveOnX::vertical(b5),
                          CurveOnX::infinity_section()}) {
        LocalNum v = kato_symbol(Flag{x, y}, one, one, 32);
        CHECK(v.v == 0);
        CHECK((v.u - v.u.R->one()).negligible());
    }
    // x not on the curve: 1
    auto y7 = CurveOnX::horizontal(qpoly({-1, 1}));  // t = 1 does not pass t=0 mod 5
    FactoredFunction f = atom_fn(Q, qpoly({0, 1}));
    LocalNum v = kato_symbol(Flag{x, y7}, f, f, 32);
    CHECK(v.v == 0);
}

TEST_CASE("flag-local normal form splits off the uniformizer power") {
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    ClosedPointOnX x;
    x.b = b5;
    x.minpoly = Poly<FqElem>::monomial(residue_field(b5)->one(), 1);
    x.deg = 1;
    auto y = CurveOnX::horizontal(qpoly({0, 1}));
    FactoredFunction f =
        atom_fn(Q, qpoly({0, 1}), 3) * atom_fn(Q, qpoly({-1, 1}), 2);
    FlagLocalElement e = flag_local(Flag{x, y}, f);
    CHECK(e.m == 3);
    CHECK(curve_valuation(y, e.unit_part) == 0);
    // vertical flag: the uniformizer is pi_b
    FlagLocalElement ev = flag_local(Flag{x, CurveOnX::vertical(b5)},
                                     f.times_const(NFElem(25)));
    CHECK(ev.m == 2);
    CHECK(curve_valuation(CurveOnX::vertical(b5), ev.unit_part) == 0);
}

TEST_CASE("point reciprocity: hand-checked products at x0 over (5)") {
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    ClosedPointOnX x;
    x.b = b5;
    x.minpoly = Poly<FqElem>::monomial(residue_field(b5)->one(), 1);
    x.deg = 1;
    // r = t, s = t - 5
    FactoredFunction r = atom_fn(Q, qpoly({0, 1}));
    FactoredFunction s = atom_fn(Q, qpoly({-5, 1}));
    LocalNum prod(0, LocalRing::completion(b5, 48)->one());
    for (const auto& fl : active_flags_through(x, r, s)) {
        prod = prod * kato_symbol(fl, r, s, 48);
    }
    CHECK(prod.v == 0);
    CHECK((prod.u - prod.u.R->one()).negligible());
    // r = t, s = 5
    FactoredFunction s2 = FactoredFunction::from_constant(NFElem(5));
    LocalNum prod2(0, LocalRing::completion(b5, 48)->one());
    for (const auto& fl : active_flags_through(x, r, s2))
        prod2 = prod2 * kato_symbol(fl, r, s2, 48);
    CHECK(prod2.v == 0);
    CHECK((prod2.u - prod2.u.R->one()).negligible());
}

TEST_CASE("vertical reciprocity: small hand cases over X_5") {
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    auto R0 = LocalRing::completion(b5, 48);
    auto run = [&](const FactoredFunction& f, const FactoredFunction& g) {
        LocalNum prod(0, R0->one());
        for (const auto& x : fiber_points(b5, 3)) {
            prod = prod * kato_symbol_vertical(x, f, g, 48);
        }
        CHECK(prod.v == 0);
        CHECK((prod.u - R0->one()).negligible());
    };
    FactoredFunction t = atom_fn(Q, qpoly({0, 1}));
    FactoredFunction t1 = atom_fn(Q, qpoly({-1, 1}));
    run(t, t1);
    run(t.times_const(NFElem(5)), t);  // 5t against t
    run(atom_fn(Q, qpoly({2, 0, 1})), t1);  // t^2+2 irreducible mod 5
}

TEST_CASE("skew symmetry and bimultiplicativity of flag symbols (random)") {
    Rng rng(246);
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    std::vector<Poly<NFElem>> atoms = {qpoly({0, 1}), qpoly({-5, 1}), qpoly({-1, 1}),
                                       qpoly({2, 0, 1}), qpoly({-2, 1})};
    auto rand_fn = [&](int span) {
        FactoredFunction f = FactoredFunction::one(Q);
        long c = arithsurf::testing::rand_int(rng, 1, 30);
        f = f.times_const(NFElem(c));
        for (const auto& a : atoms)
            if (arithsurf::testing::rand_int(rng, 0, 2) == 0)
                f = f.times_atom(a, arithsurf::testing::rand_int(rng, -span, span));
        return f;
    };
    // a rational point and a degree-2 point on the fiber over 5
    std::vector<ClosedPointOnX> pts;
    for (const auto& x : fiber_points(b5, 2))
        if (!x.at_infinity) pts.push_back(x);
    ClosedPointOnX x1 = pts.front(), x2 = pts.back();
    auto yflag = Flag{x1, CurveOnX::horizontal(qpoly({0, 1}))};
    for (int i = 0; i < 25; ++i) {
        FactoredFunction f = rand_fn(2), g = rand_fn(2), h = rand_fn(1);
        // vertical skew symmetry at both points
        for (const auto& x : {x1, x2}) {
            LocalNum a = kato_symbol_vertical(x, f, g, 48);
            LocalNum b = kato_symbol_vertical(x, g, f, 48);
            LocalNum p = a * b;
            CHECK(p.v == 0);
            CHECK((p.u - p.u.R->one()).negligible());
            // bimultiplicativity
            LocalNum l = kato_symbol_vertical(x, f * h, g, 48);
            LocalNum r = a * kato_symbol_vertical(x, h, g, 48);
            CHECK(l.v == r.v);
            CHECK((l.u - r.u).negligible());
        }
        // horizontal flag symbol skew symmetry through the place
        LocalNum a = kato_symbol(yflag, f, g, 48);
        LocalNum b = kato_symbol(yflag, g, f, 48);
        LocalNum p = a * b;
        CHECK(p.v == 0);
        CHECK((p.u - p.u.R->one()).negligible());
    }
}

TEST_CASE("unit pairs land in the unit group") {
    Rng rng(135);
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    ClosedPointOnX x;
    x.b = b5;
    x.minpoly = Poly<FqElem>::monomial(residue_field(b5)->one(), 1);
    x.deg = 1;
    // units of O_{x,y} for the fiber: no 5-content, any atoms
    std::vector<Poly<NFElem>> atoms = {qpoly({0, 1}), qpoly({-1, 1}), qpoly({-7, 1})};
    for (int i = 0; i < 50; ++i) {
        FactoredFunction f = FactoredFunction::one(Q);
        FactoredFunction g = FactoredFunction::one(Q);
        for (const auto& a : atoms) {
            f = f.times_atom(a, arithsurf::testing::rand_int(rng, -1, 1));
            g = g.times_atom(a, arithsurf::testing::rand_int(rng, -1, 1));
        }
        long cu = arithsurf::testing::rand_int(rng, 1, 24);
        if (cu % 5 == 0) ++cu;
        f = f.times_const(NFElem(cu));
        LocalNum v = kato_symbol_vertical(x, f, g, 48);
        CHECK(v.v == 0);
    }
}

TEST_CASE("vertical symbols at higher-degree and ramified-base points") {
    // point of degree 2 over Q(i)'s ramified prime (1+i)
    NumberField Qi = NumberField::quadratic(-1);
    auto b2 = prime_above(2, Qi);
    auto pts = fiber_points(b2, 2);
    ClosedPointOnX xdeg2;
    bool found = false;
    for (const auto& x : pts)
        if (!x.at_infinity && x.deg == 2) {
            xdeg2 = x;
            found = true;
            break;
        }
    REQUIRE(found);
    FactoredFunction fpi = FactoredFunction::from_constant(NFElem(Qi, 1, 1));  // 1+i
    Poly<NFElem> q(std::vector<NFElem>{NFElem(Qi, 1, 0), NFElem(Qi, 1, 0), NFElem(Qi, 1, 0)});
    // q = t^2 + t + 1: reduction irreducible over F_2
    FactoredFunction g = FactoredFunction::one(Qi).times_atom(q, 1);
    LocalNum s = kato_symbol_vertical(xdeg2, fpi, g, 48);
    // f = pi^1 * unit, g vanishes at the degree-2 point to order 1:
    // the residue norm contributes valuation -2... the boundary inverts it
    CHECK(s.v == -2);
    LocalNum skew = s * kato_symbol_vertical(xdeg2, g, fpi, 48);
    CHECK(skew.v == 0);
    CHECK((skew.u - skew.u.R->one()).negligible());
}
