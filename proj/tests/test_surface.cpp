#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithsurf/errors.hpp"
#include "arithsurf/surface.hpp"
#include "testutil.hpp"

using namespace arithsurf;
using arithsurf::testing::Rng;

namespace {

Poly<NFElem> qpoly(std::vector<long> coeffs) {
    std::vector<NFElem> c;
    for (long v : coeffs) c.push_back(NFElem(v));
    return Poly<NFElem>(std::move(c));
}

}  // namespace

TEST_CASE("divisors of factored functions") {
    NumberField Q = NumberField::Q();
    // u = t - 1/5: horizontal component, pole at infinity, content at (5)
    Poly<NFElem> h(std::vector<NFElem>{NFElem(Rat(-1, 5)), NFElem(1)});
    FactoredFunction u = FactoredFunction::one(Q).times_atom(h, 1);
    DivisorOnX D = divisor_of_function(u);
    CHECK(D.at(CurveOnX::horizontal(h)) == 1);
    CHECK(D.at(CurveOnX::infinity_section()) == -1);
    CHECK(D.at(CurveOnX::vertical(prime_above(5, Q))) == -1);
    // degree-0 check on fibers of the full divisor: sum of coefficients
    // weighted by curve-degree over each fiber is zero for div(t - 1/5)... the
    // horizontal part has fiber-degree 1, infinity 1, the fiber itself 1.
    FactoredFunction v = FactoredFunction::from_constant(NFElem(10));
    DivisorOnX Dv = divisor_of_function(v);
    CHECK(Dv.at(CurveOnX::vertical(prime_above(2, Q))) == 1);
    CHECK(Dv.at(CurveOnX::vertical(prime_above(5, Q))) == 1);
}

TEST_CASE("intersection_points spec cases") {
    NumberField Q = NumberField::Q();
    auto t0 = CurveOnX::horizontal(qpoly({0, 1}));
    auto t5 = CurveOnX::horizontal(qpoly({-5, 1}));
    auto pts = intersection_points(t0, t5);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x.b.p == 5);
    CHECK(pts[0].i_x == 1);
    CHECK(pts[0].x.deg == 1);

    auto t25 = CurveOnX::horizontal(qpoly({-25, 1}));
    auto pts2 = intersection_points(t0, t25);
    REQUIRE(pts2.size() == 1);
    CHECK(pts2[0].i_x == 2);

    auto ti = CurveOnX::horizontal(qpoly({1, 0, 1}));
    auto t1 = CurveOnX::horizontal(qpoly({-1, 1}));
    auto pts3 = intersection_points(ti, t1);
    REQUIRE(pts3.size() == 1);
    CHECK(pts3[0].x.b.p == 2);
    CHECK(pts3[0].i_x == 1);
    CHECK(pts3[0].weight == 1);

    CHECK_THROWS_AS(intersection_points(t0, t0), value_error);
}

TEST_CASE("deligne_divisor spec cases") {
    NumberField Q = NumberField::Q();
    auto t0 = CurveOnX::horizontal(qpoly({0, 1}));
    auto t5 = CurveOnX::horizontal(qpoly({-5, 1}));
    DivisorOnB d1 = deligne_divisor(t0, t5);
    CHECK(d1.at(prime_above(5, Q)) == 1);
    CHECK(d1.coeff.size() == 1);

    // (t^2+t+1, t-2): resultant is 7
    auto w = CurveOnX::horizontal(qpoly({1, 1, 1}));
    auto t2 = CurveOnX::horizontal(qpoly({-2, 1}));
    DivisorOnB d2 = deligne_divisor(w, t2);
    CHECK(d2.at(prime_above(7, Q)) == 1);
    CHECK(d2.coeff.size() == 1);

    // vertical fiber against the zero section
    DivisorOnB d3 = deligne_divisor(CurveOnX::vertical(prime_above(5, Q)), t0);
    CHECK(d3.at(prime_above(5, Q)) == 1);
    CHECK(d3.coeff.size() == 1);
}

TEST_CASE("resultant oracle: deligne coefficients match v_b(Res) (50 random coprime pairs)") {
    Rng rng(8888);
    for (const NumberField& K : {NumberField::Q(), NumberField::quadratic(-1)}) {
        int done = 0;
        while (done < 25) {
            int dd = testing::rand_int(rng, 1, 4);
            int de = testing::rand_int(rng, 1, 4);
            Poly<NFElem> qd = testing::rand_monic(rng, K, dd, 6);
            Poly<NFElem> qe = testing::rand_monic(rng, K, de, 6);
            if (poly_gcd(qd, qd.derivative()).deg() != 0) continue;
            if (poly_gcd(qe, qe.derivative()).deg() != 0) continue;
            if (poly_gcd(qd, qe).deg() != 0) continue;
            NFElem res = resultant(qd, qe);
            if (res.is_zero()) continue;
            // aggregate over places of qd (which may be reducible over K:
            // bilinearity is exercised through the same machinery)
            DivisorOnB total;
            bool unsupported = false;
            try {
                std::set<Int> ps;
                Rat nr = res.norm();
                for (const auto& [p, k] : factor_integer(abs(nr.get_num()))) ps.insert(p);
                for (const auto& [p, k] : factor_integer(nr.get_den())) ps.insert(p);
                for (const Int& p : ps) {
                    for (const auto& b : factor_prime(p, K)) {
                        int acc = 0;
                        for (const auto& pl : places_above(qd, b, 64)) acc += pl.vb_norm_of(qe);
                        total.add(b, acc);
                    }
                }
            } catch (const unsupported_error&) {
                unsupported = true;
            }
            if (unsupported) continue;
            CHECK(total == principal_divisor(res));
            ++done;
        }
    }
}

TEST_CASE("deligne divisor is symmetric and bilinear") {
    Rng rng(3333);
    NumberField Q = NumberField::Q();
    int done = 0;
    while (done < 15) {
        Poly<NFElem> qd = testing::rand_monic(rng, Q, testing::rand_int(rng, 1, 2), 8);
        Poly<NFElem> qe = testing::rand_monic(rng, Q, testing::rand_int(rng, 1, 2), 8);
        Poly<NFElem> qf = testing::rand_monic(rng, Q, 1, 8);
        try {
            if (!is_irreducible_monic(qd) || !is_irreducible_monic(qe) ||
                !is_irreducible_monic(qf))
                continue;
        } catch (const unsupported_error&) {
            continue;
        }
        if (qd == qe || qd == qf || qe == qf) continue;
        auto D = CurveOnX::horizontal(qd);
        auto E = CurveOnX::horizontal(qe);
        auto F = CurveOnX::horizontal(qf);
        CHECK(deligne_divisor(D, E) == deligne_divisor(E, D));
        DivisorOnX sum;
        sum.add(E, 1);
        sum.add(F, 2);
        DivisorOnX dD;
        dD.add(D, 1);
        DivisorOnB lhs = deligne_divisor(dD, sum);
        DivisorOnB rhs = deligne_divisor(D, E) + deligne_divisor(D, F) * 2;
        CHECK(lhs == rhs);
        ++done;
    }
}

TEST_CASE("pushforward of principal divisors") {
    NumberField Q = NumberField::Q();
    auto D = CurveOnX::horizontal(qpoly({1, 0, 1}));  // t^2+1
    // f = theta - 2: norm 5
    DivisorOnB d = pushforward_principal(D, qpoly({-2, 1}));
    CHECK(d.at(prime_above(5, Q)) == 1);
    CHECK(d.coeff.size() == 1);
    // f = theta: norm 1
    CHECK(pushforward_principal(D, qpoly({0, 1})).is_zero());
    CHECK(pushforward_principal(D, qpoly({1})).is_zero());
    CHECK_THROWS_AS(pushforward_principal(D, Poly<NFElem>()), value_error);
    // multiplicativity
    Rng rng(404);
    for (int i = 0; i < 10; ++i) {
        Poly<NFElem> f = testing::rand_monic(rng, Q, 1, 9);
        Poly<NFElem> g = testing::rand_monic(rng, Q, 1, 9);
        auto [q1, r1] = divmod(f * g, qpoly({1, 0, 1}));
        if (r1.is_zero()) continue;
        if (divmod(f, qpoly({1, 0, 1})).second.is_zero()) continue;
        if (divmod(g, qpoly({1, 0, 1})).second.is_zero()) continue;
        CHECK(pushforward_principal(D, f * g) ==
              pushforward_principal(D, f) + pushforward_principal(D, g));
    }
}

TEST_CASE("intersections at infinity") {
    NumberField Q = NumberField::Q();
    // D: t - 1/5 passes through infinity over (5); meets the infinity section
    Poly<NFElem> h(std::vector<NFElem>{NFElem(Rat(-1, 5)), NFElem(1)});
    auto D = CurveOnX::horizontal(h);
    auto Hinf = CurveOnX::infinity_section();
    auto pts = intersection_points(D, Hinf);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].x.at_infinity);
    CHECK(pts[0].x.b.p == 5);
    CHECK(pts[0].i_x == 1);
    // the infinity section meets every fiber once at infinity
    auto ptsf = intersection_points(Hinf, CurveOnX::vertical(prime_above(3, Q)));
    REQUIRE(ptsf.size() == 1);
    CHECK(ptsf[0].x.at_infinity);
    CHECK(ptsf[0].i_x == 1);
    // and D meets the fiber over 5 exactly at the infinity point
    auto ptsv = intersection_points(D, CurveOnX::vertical(prime_above(5, Q)));
    REQUIRE(ptsv.size() == 1);
    CHECK(ptsv[0].x.at_infinity);
}

TEST_CASE("fiber points enumeration") {
    NumberField Q = NumberField::Q();
    auto pts = fiber_points(prime_above(2, Q), 3);
    // P^1(F_2): degree 1: t, t+1, infinity; degree 2: 1 poly; degree 3: 2
    int d1 = 0, d2 = 0, d3 = 0, inf = 0;
    for (const auto& x : pts) {
        if (x.at_infinity)
            ++inf;
        else if (x.deg == 1)
            ++d1;
        else if (x.deg == 2)
            ++d2;
        else
            ++d3;
    }
    CHECK(d1 == 2);
    CHECK(d2 == 1);
    CHECK(d3 == 2);
    CHECK(inf == 1);
}
