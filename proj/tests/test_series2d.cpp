#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithsurf/errors.hpp"
#include "arithsurf/series2d.hpp"
#include "testutil.hpp"

using namespace arithsurf;
using arithsurf::testing::Rng;

namespace {

LocalRingPtr z5(int prec = 64) {
    return LocalRing::completion(prime_above(5, NumberField::Q()), prec);
}

DoubleSeries mono(const LocalRingPtr& R, int j, long c) {
    return DoubleSeries::from_terms(R, {{j, NFElem(c)}});
}

// random series with exponents in [-span, span] and coefficients c*5^k
DoubleSeries rand_series(Rng& rng, const LocalRingPtr& R, int span = 4, bool unit_only = false) {
    DoubleSeries s(R);
    int n = arithsurf::testing::rand_int(rng, 1, 5);
    for (int i = 0; i < n; ++i) {
        int j = static_cast<int>(arithsurf::testing::rand_int(rng, -span, span));
        long c = arithsurf::testing::rand_int(rng, 1, 124);
        int k = static_cast<int>(arithsurf::testing::rand_int(rng, 0, 3));
        if (c % 5 == 0) ++c;
        NFElem coeff = NFElem(c) * NFElem(Rat(pow_int(5, k)));
        if (unit_only && i == 0) {
            coeff = NFElem(c);
            j = 0;
        }
        s = s + DoubleSeries::from_terms(R, {{j, coeff}});
    }
    return s;
}

}  // namespace

TEST_CASE("series arithmetic basics") {
    auto R = z5();
    // (1+t)(1-t) = 1 - t^2
    DoubleSeries a = mono(R, 0, 1) + mono(R, 1, 1);
    DoubleSeries b = mono(R, 0, 1) + mono(R, 1, -1);
    DoubleSeries prod = a * b;
    CHECK(prod.coeffs.size() == 2);
    CHECK(prod.coeffs.at(0).v == 0);
    CHECK(prod.coeffs.at(2).v == 0);
    CHECK(prod.val() == 0);
    // (5 t^-1 + 1) + (-5 t^-1) = 1
    DoubleSeries c = mono(R, -1, 5) + mono(R, 0, 1);
    DoubleSeries d = mono(R, -1, -5);
    DoubleSeries sum = c + d;
    CHECK(sum.coeffs.size() == 1);
    CHECK(sum.coeffs.count(0) == 1);
}

TEST_CASE("truncated geometric multiplication") {
    auto R = z5();
    // f = sum_{j>=0} 5^j t^{-j} truncated, times t
    DoubleSeries f(R);
    for (int j = 0; j < 8; ++j) f.set_coeff(-j, R->embed(NFElem(Rat(pow_int(5, j)))));
    f.tail_floor = 8;  // beyond the window everything has valuation >= 8
    // the tail contract is about exponents above jmax; negative exponents
    // below jmin are declared zero, so this models the truncation honestly
    DoubleSeries t = mono(R, 1, 1);
    DoubleSeries g = f * t;
    CHECK(g.coeffs.at(1).v == 0);
    CHECK(g.coeffs.at(0).v == 1);
    CHECK(g.coeffs.at(-1).v == 2);
    CHECK(g.val() == 0);
}

TEST_CASE("series valuation spec values") {
    auto R = z5();
    CHECK(mono(R, 0, 5).val() == 1);
    CHECK((mono(R, -1, 5) + mono(R, 1, 1)).val() == 0);
    CHECK((mono(R, 3, 25) + mono(R, 0, 5)).val() == 1);
    DoubleSeries zero(R);
    zero.tail_floor = 3;
    CHECK_THROWS_AS(zero.val(), precision_error);
}

TEST_CASE("series reduction spec values") {
    auto R = z5();
    auto k = R->kres;
    // 5 t^-1 + t -> t
    ResidueLaurent r1 = (mono(R, -1, 5) + mono(R, 1, 1)).reduce();
    CHECK(r1.coeff.size() == 1);
    CHECK(r1.coeff.at(1) == k->one());
    ResidueLaurent r2 = mono(R, 0, 3).reduce();
    CHECK(r2.coeff.at(0) == k->from_int(3));
    ResidueLaurent r3 = (mono(R, 0, 1) + mono(R, 1, 5)).reduce();
    CHECK(r3.coeff.size() == 1);
    CHECK(r3.coeff.at(0) == k->one());
    CHECK_THROWS_AS(mono(R, 0, 5).reduce(), value_error);
}

TEST_CASE("window overflow is reported") {
    auto R = z5();
    DoubleSeries s(R);
    s.set_coeff(0, R->embed(NFElem(1)));
    CHECK_THROWS_AS(s.set_coeff(100000, R->embed(NFElem(1))), value_error);
}

TEST_CASE("winding numbers") {
    auto R = z5();
    CHECK(mono(R, 1, 1).winding_number() == 1);
    CHECK((mono(R, 0, 1) + mono(R, -3, 5)).winding_number() == 0);
    CHECK((mono(R, -2, 1) + mono(R, -3, 5)).winding_number() == -2);
}

TEST_CASE("series_val is additive on products (500 random)") {
    Rng rng(909);
    auto R = z5(48);
    for (int i = 0; i < 500; ++i) {
        DoubleSeries f = rand_series(rng, R);
        DoubleSeries g = rand_series(rng, R);
        int vf, vg;
        try {
            vf = f.val();
            vg = g.val();
        } catch (const precision_error&) {
            continue;
        }
        CHECK((f * g).val() == vf + vg);
    }
}

TEST_CASE("reduction is multiplicative on valuation-zero series") {
    Rng rng(910);
    auto R = z5(48);
    int done = 0;
    while (done < 200) {
        DoubleSeries f = rand_series(rng, R);
        DoubleSeries g = rand_series(rng, R);
        try {
            if (f.val() != 0 || g.val() != 0) continue;
        } catch (const precision_error&) {
            continue;
        }
        CHECK((f * g).reduce() == (f.reduce() * g.reduce()));
        ++done;
    }
}

TEST_CASE("winding additivity on random unit pairs (200)") {
    Rng rng(911);
    auto R = z5(48);
    int done = 0;
    while (done < 200) {
        DoubleSeries f = rand_series(rng, R);
        DoubleSeries g = rand_series(rng, R);
        try {
            if (f.val() != 0 || g.val() != 0) continue;
            CHECK((f * g).winding_number() == f.winding_number() + g.winding_number());
            ++done;
        } catch (const precision_error&) {
            continue;
        }
    }
}

TEST_CASE("principal-unit-plus-t-integral elements have winding zero") {
    // elements of O^x_{K_p} + t O_{K_p}[[t]]
    Rng rng(912);
    auto R = z5(48);
    for (int i = 0; i < 100; ++i) {
        DoubleSeries s(R);
        long u = arithsurf::testing::rand_int(rng, 1, 124);
        if (u % 5 == 0) ++u;
        s.set_coeff(0, R->embed(NFElem(u)));
        int n = static_cast<int>(arithsurf::testing::rand_int(rng, 0, 4));
        for (int j = 1; j <= n; ++j) {
            long c = arithsurf::testing::rand_int(rng, 1, 624);
            s.set_coeff(j, R->embed(NFElem(c)));
        }
        CHECK(s.val() == 0);
        CHECK(s.winding_number() == 0);
    }
}
