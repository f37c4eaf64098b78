#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithsurf/errors.hpp"
#include "arithsurf/padic.hpp"
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

TEST_CASE("local ring arithmetic and valuation") {
    NumberField Qi = NumberField::quadratic(-1);
    auto b2 = prime_above(2, Qi);  // ramified, pi = 1+i
    auto R = LocalRing::completion(b2, 32);
    LocalElem two = R->from_int(2);
    CHECK(two.val() == 2);
    CHECK(R->uniformizer().val() == 1);
    LocalNum n = R->embed(NFElem(Qi, 1, 1));
    CHECK(n.v == 1);
    // norm down at split prime: embedding matches residues
    auto b5s = factor_prime(5, Qi);
    for (const auto& b : b5s) {
        auto R5 = LocalRing::completion(b, 32);
        LocalNum m = R5->embed(b.second_gen);
        CHECK(m.v == 1);
        LocalNum u = R5->embed(b.helper);
        CHECK(u.v == 0);
    }
    // inert prime of Q(i)
    auto b3 = prime_above(3, Qi);
    auto R3 = LocalRing::completion(b3, 32);
    LocalNum w = R3->embed(NFElem::omega(Qi));
    CHECK(w.v == 0);
    CHECK((w.u * w.u).residue() == R3->kres->from_int(-1));
}

TEST_CASE("local ring embed is multiplicative (precision sanity)") {
    Rng rng(31337);
    for (const NumberField& K : {NumberField::Q(), NumberField::quadratic(-1),
                                 NumberField::quadratic(-5)}) {
        for (long p : {2, 5}) {
            for (const auto& b : factor_prime(p, K)) {
                auto R = LocalRing::completion(b, 24);
                for (int i = 0; i < 30; ++i) {
                    NFElem x = testing::rand_nonzero(rng, K, 9);
                    NFElem y = testing::rand_nonzero(rng, K, 9);
                    LocalNum ex = R->embed(x), ey = R->embed(y), exy = R->embed(x * y);
                    LocalNum prod = ex * ey;
                    CHECK(exy.v == prod.v);
                    LocalElem diff = exy.u - prod.u;
                    CHECK(diff.negligible());
                }
            }
        }
    }
}

TEST_CASE("unramified extension norm and residue") {
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    auto R = LocalRing::completion(b5, 24);
    // residue extension by an irreducible cubic over F_5
    auto irr = fq_monic_irreducibles(R->kb, 3);
    REQUIRE(!irr.empty());
    auto E = LocalRing::unramified_extension(R, irr[0]);
    CHECK(E->dim == 3);
    LocalElem z = E->psi() + E->from_int(2);
    LocalElem nz = E->norm_to_base(z);
    // norm of a unit is a unit, and is multiplicative
    CHECK(E->unit_split(nz).v == 0);
    LocalElem z2 = E->psi() * E->psi() + E->from_int(1);
    LocalElem lhs = E->norm_to_base(z * z2);
    LocalElem rhs = E->norm_to_base(z) * E->norm_to_base(z2);
    CHECK((lhs - rhs).stored_zero());
    // norm of a base scalar is the cube
    LocalElem s = E->from_int(7);
    CHECK((E->norm_to_base(s) - R->from_int(343)).stored_zero());
}

TEST_CASE("hensel_factor splits t^2-2 over Q_7") {
    NumberField Q = NumberField::Q();
    auto b7 = prime_above(7, Q);
    auto facs = hensel_factor(qpoly({-2, 0, 1}), b7, 32);
    REQUIRE(facs.size() == 2);
    for (const auto& f : facs) {
        CHECK(f.poly.deg() == 1);
        CHECK(f.cert == FactorCert::degree1);
        // root^2 = 2 mod 7^32
        LocalElem root = f.poly[1].R->zero() - f.poly[0];
        CHECK((root * root - f.poly[1].R->from_int(2)).negligible());
    }
}

TEST_CASE("hensel_factor certifies irreducibles") {
    NumberField Q = NumberField::Q();
    auto b7 = prime_above(7, Q);
    auto f1 = hensel_factor(qpoly({1, 0, 1}), b7, 32);  // t^2+1, -1 QNR mod 7
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].f == 2);
    CHECK(f1[0].cert == FactorCert::unramified);
    auto f2 = hensel_factor(qpoly({-7, 0, 1}), b7, 32);  // Eisenstein
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].e == 2);
    CHECK(f2[0].cert == FactorCert::newton_slope);
    // t^2 - 49*2: roots 7*sqrt(2), scaled unramified... 2 is a QR mod 7 (3^2=2), so split
    auto f3 = hensel_factor(qpoly({-98, 0, 1}), b7, 32);
    CHECK(f3.size() == 2);
    // t^2 - 49*3: 3 is a QNR mod 7: irreducible after scaling
    auto f4 = hensel_factor(qpoly({-147, 0, 1}), b7, 32);
    REQUIRE(f4.size() == 1);
    CHECK(f4[0].f == 2);
    CHECK(f4[0].cert == FactorCert::scaled_unramified);
    CHECK_THROWS_AS(hensel_factor(qpoly({1, 2, 1}), b7, 32), value_error);  // (t+1)^2
}

TEST_CASE("hensel_factor reassembles to the input (random)") {
    Rng rng(2024);
    NumberField Q = NumberField::Q();
    for (int trial = 0; trial < 40; ++trial) {
        long p = std::vector<long>{2, 3, 5, 7}[testing::rand_int(rng, 0, 3)];
        auto b = prime_above(p, Q);
        Poly<NFElem> P = testing::rand_monic(rng, Q, testing::rand_int(rng, 2, 3), 9);
        if (poly_gcd(P, P.derivative()).deg() != 0) continue;
        std::vector<LocalFactor> facs;
        try {
            facs = hensel_factor(P, b, 32);
        } catch (const unsupported_error&) {
            continue;
        }
        int ef = 0;
        auto R = facs[0].poly.lc().R;
        Poly<LocalElem> prod = Poly<LocalElem>::constant(R->one());
        for (const auto& f : facs) {
            ef += f.poly.deg();
            prod = prod * f.poly;
        }
        CHECK(ef == P.deg());
        Poly<LocalElem> diff = prod - embed_poly(R, P);
        for (const auto& cdiff : diff.c) CHECK(cdiff.negligible());
    }
}

TEST_CASE("weierstrass_prepare spec cases over Z_5") {
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    auto R = LocalRing::completion(b5, 32);
    // q = t^2 + 5t + 5: already distinguished
    auto w1 = weierstrass_prepare(embed_poly(R, qpoly({5, 5, 1})));
    CHECK(w1.p_exponent == 0);
    CHECK(w1.unit_poly == Poly<LocalElem>::constant(R->one()));
    CHECK(w1.distinguished == embed_poly(R, qpoly({5, 5, 1})));
    // q = (1+5t)(t-5)
    auto w2 = weierstrass_prepare(embed_poly(R, qpoly({-5, -24, 5})));
    CHECK(w2.p_exponent == 0);
    CHECK(w2.distinguished.deg() == 1);
    Poly<LocalElem> re = w2.unit_poly * w2.distinguished;
    Poly<LocalElem> diff = re - embed_poly(R, qpoly({-5, -24, 5}));
    for (const auto& cdiff : diff.c) CHECK(cdiff.negligible());
    // q = 5
    auto w3 = weierstrass_prepare(embed_poly(R, qpoly({5})));
    CHECK(w3.p_exponent == 1);
    CHECK(w3.distinguished.deg() == 0);
}

TEST_CASE("weierstrass content cross-check against resultant valuations") {
    Rng rng(5150);
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    auto R = LocalRing::completion(b5, 40);
    for (int i = 0; i < 25; ++i) {
        Poly<NFElem> q = testing::rand_monic(rng, Q, 3, 20);
        auto w = weierstrass_prepare(embed_poly(R, q));
        // v_5(q(0)) = p_exponent + v(unit(0)) + v(W(0)); unit constant is a unit
        if (q.coeff(0).is_zero()) continue;
        int lhs = valuation_at(q.coeff(0), b5);
        int rhs = w.p_exponent + w.distinguished.coeff(0).val();
        if (w.distinguished.deg() == 0) rhs = w.p_exponent + w.unit_poly.coeff(0).val();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("places_above spec cases") {
    NumberField Q = NumberField::Q();
    auto b2 = prime_above(2, Q);
    auto b5 = prime_above(5, Q);
    // h = t: one place, e = f = 1
    auto p1 = places_above(qpoly({0, 1}), b5, 32);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0].e == 1);
    CHECK(p1[0].f == 1);
    // t^2+1 over (2): one place, e=2, f=1
    auto p2 = places_above(qpoly({1, 0, 1}), b2, 32);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].e == 2);
    CHECK(p2[0].f == 1);
    // t^2+1 over (5): two places
    auto p3 = places_above(qpoly({1, 0, 1}), b5, 32);
    CHECK(p3.size() == 2);
}

TEST_CASE("places at infinity when coefficients have denominators") {
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    // t - 1/5: the section passes through infinity over (5)
    Poly<NFElem> h(std::vector<NFElem>{NFElem(Rat(-1, 5)), NFElem(1)});
    auto pl = places_above(h, b5, 32);
    REQUIRE(pl.size() == 1);
    CHECK(pl[0].at_infinity);
    CHECK(pl[0].e * pl[0].f == 1);
    // valuation of g = t at that place: theta = 1/5, v(1/5) = -1... as a place of
    // the rational function field: v_x(theta) where theta has negative valuation
    CHECK(pl[0].val_of(qpoly({0, 1})) == -1);
}

TEST_CASE("place valuations aggregate to the global resultant (100 random)") {
    Rng rng(616);
    NumberField Q = NumberField::Q();
    NumberField Qi = NumberField::quadratic(-1);
    int done = 0;
    while (done < 100) {
        const NumberField& K = (done % 2 == 0) ? Q : Qi;
        long p = std::vector<long>{2, 3, 5, 7, 11}[testing::rand_int(rng, 0, 4)];
        auto bs = factor_prime(p, K);
        const auto& b = bs[testing::rand_int(rng, 0, bs.size() - 1)];
        Poly<NFElem> h = testing::rand_monic(rng, K, testing::rand_int(rng, 1, 3), 7);
        Poly<NFElem> g = testing::rand_monic(rng, K, testing::rand_int(rng, 1, 2), 7);
        if (poly_gcd(h, h.derivative()).deg() != 0) continue;
        if (poly_gcd(h, g).deg() != 0) continue;
        NFElem res = resultant(h, g);
        if (res.is_zero()) continue;
        std::vector<PlaceAbove> places;
        try {
            places = places_above(h, b, 40);
        } catch (const unsupported_error&) {
            continue;
        }
        int ef = 0, total = 0;
        for (const auto& pl : places) {
            ef += pl.e * pl.f;
            total += pl.vb_norm_of(g);
        }
        CHECK(ef == h.deg());
        CHECK(total == valuation_at(res, b));
        ++done;
    }
}
