#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithsurf/errors.hpp"
#include "arithsurf/milnor.hpp"
#include "testutil.hpp"

using namespace arithsurf;
using arithsurf::testing::Rng;

namespace {

LocalRingPtr z5(int prec = 48) {
    return LocalRing::completion(prime_above(5, NumberField::Q()), prec);
}

SymbolAtom atom_T(const LocalRingPtr& R) {
    SymbolAtom a;
    a.poly = Poly<LocalElem>::monomial(R->one(), 1);
    a.cert = AtomCert::degree1;
    return a;
}

SymbolAtom atom_lin(const LocalRingPtr& R, long c) {
    // T - c with v(c) >= 1
    SymbolAtom a;
    a.poly = Poly<LocalElem>(std::vector<LocalElem>{R->from_int(-c), R->one()});
    a.cert = AtomCert::degree1;
    return a;
}

}  // namespace

TEST_CASE("steinberg_check") {
    CHECK(steinberg_check(NFElem(Rat(1, 2)), NFElem(Rat(1, 2))));
    CHECK(steinberg_check(NFElem(2), NFElem(-1)));
    CHECK_FALSE(steinberg_check(NFElem(2), NFElem(3)));
}

TEST_CASE("tame symbol over Q_5 spec values") {
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    auto k = residue_field(b5);
    CHECK(tame_symbol(NFElem(2), NFElem(5), b5, k) == k->from_int(2));
    CHECK(tame_symbol(NFElem(5), NFElem(5), b5, k) == k->from_int(4));
    CHECK(tame_symbol(NFElem(5), NFElem(10), b5, k) == k->from_int(2));
    CHECK_THROWS_AS(tame_symbol(NFElem(0), NFElem(5), b5, k), value_error);
}

TEST_CASE("tame symbol properties over p-adic contexts (300 random)") {
    Rng rng(321);
    std::vector<PrimeOfB> primes;
    for (const auto& K : {NumberField::Q(), NumberField::quadratic(-1)})
        for (long p : {2, 3, 5, 7})
            for (const auto& b : factor_prime(p, K)) primes.push_back(b);
    int done = 0;
    while (done < 300) {
        const PrimeOfB& b = primes[testing::rand_int(rng, 0, primes.size() - 1)];
        auto k = residue_field(b);
        NFElem x = testing::rand_nonzero(rng, b.field, 9);
        NFElem y = testing::rand_nonzero(rng, b.field, 9);
        NFElem z = testing::rand_nonzero(rng, b.field, 9);
        // Steinberg: (a, 1-a) = 1
        if (!(x == NFElem(1)) && !x.is_zero()) {
            NFElem om = NFElem(b.field, 1, 0) - x;
            if (!om.is_zero()) CHECK(tame_symbol(x, om, b, k) == k->one());
        }
        // skew symmetry
        CHECK(tame_symbol(x, y, b, k) * tame_symbol(y, x, b, k) == k->one());
        // bimultiplicativity
        CHECK(tame_symbol(x * y, z, b, k) == tame_symbol(x, z, b, k) * tame_symbol(y, z, b, k));
        CHECK(tame_symbol(x, y * z, b, k) == tame_symbol(x, y, b, k) * tame_symbol(x, z, b, k));
        // boundary characterization: v(x)=0 implies (x, pi) = xbar
        if (valuation_at(x, b) == 0)
            CHECK(tame_symbol(x, b.uniformizer(), b, k) == residue_at(x, b, k));
        ++done;
    }
}

TEST_CASE("tame symbol over F_q(t) contexts") {
    Rng rng(654);
    auto F5 = FqCtx::prime_field(5);
    auto irr2 = fq_monic_irreducibles(F5, 2);
    std::vector<Poly<FqElem>> ms = {Poly<FqElem>::monomial(F5->one(), 1), irr2[0]};
    for (const auto& m : ms) {
        auto kext = m.deg() == 1 ? F5 : FqCtx::extension(F5, m);
        auto rand_rat_fn = [&](bool nonzero_at_m) {
            FqRational f;
            for (;;) {
                std::vector<FqElem> nc, dc;
                for (int i = 0; i <= testing::rand_int(rng, 0, 2); ++i)
                    nc.push_back(F5->element_at(testing::rand_int(rng, 0, 4)));
                for (int i = 0; i <= testing::rand_int(rng, 0, 2); ++i)
                    dc.push_back(F5->element_at(testing::rand_int(rng, 0, 4)));
                f.num = Poly<FqElem>(nc);
                f.den = Poly<FqElem>(dc);
                if (f.num.is_zero() || f.den.is_zero()) continue;
                (void)nonzero_at_m;
                return f;
            }
        };
        for (int i = 0; i < 100; ++i) {
            FqRational a = rand_rat_fn(false), b = rand_rat_fn(false), c = rand_rat_fn(false);
            // skew symmetry
            FqElem ab = tame_symbol_fq(a, b, m, kext);
            FqElem ba = tame_symbol_fq(b, a, m, kext);
            CHECK(ab * ba == kext->one());
            // bimultiplicativity
            FqRational acp{a.num * c.num, a.den * c.den};
            CHECK(tame_symbol_fq(acp, b, m, kext) ==
                  tame_symbol_fq(a, b, m, kext) * tame_symbol_fq(c, b, m, kext));
        }
        // Steinberg on 100 random rational functions a with a, 1-a nonzero
        int done = 0;
        while (done < 100) {
            FqRational a = rand_rat_fn(false);
            Poly<FqElem> omn = a.den - a.num;
            if (omn.is_zero() || a.num.is_zero()) continue;
            FqRational oma{omn, a.den};
            CHECK(tame_symbol_fq(a, oma, m, kext) == kext->one());
            ++done;
        }
    }
}

TEST_CASE("kato residue spec values") {
    auto R = z5();
    auto T = atom_T(R);
    // {pi, t}: only the prime (t) contributes, residue is pi
    FactoredLocalElement f = FactoredLocalElement::one(R).times_const(R->embed(NFElem(5)));
    FactoredLocalElement g = FactoredLocalElement::one(R).times_atom(T, 1);
    LocalNum r = kato_residue(f, g);
    CHECK(r.v == 1);
    CHECK((r.u - R->one()).negligible());
    // boundary map is the inverse
    LocalNum bdy = boundary_map(f, g);
    CHECK(bdy.v == -1);
    // {u, v} with empty atoms: 1
    FactoredLocalElement u = FactoredLocalElement::one(R).times_const(LocalNum(0, R->from_int(3)));
    FactoredLocalElement v =
        FactoredLocalElement::one(R).times_tail(embed_poly(R, Poly<NFElem>(std::vector<NFElem>{
                                                       NFElem(1), NFElem(5)})),
                                                1);
    LocalNum r2 = kato_residue(u, v);
    CHECK(r2.v == 0);
    CHECK((r2.u - R->one()).negligible());
    // {t, t} = -1
    FactoredLocalElement t1 = FactoredLocalElement::one(R).times_atom(T, 1);
    LocalNum r3 = kato_residue(t1, t1);
    CHECK(r3.v == 0);
    CHECK((r3.u + R->one()).negligible());
    // skew partner: boundary{t, pi} = pi
    LocalNum r4 = boundary_map(g, f);
    CHECK(r4.v == 1);
}

namespace {

FactoredLocalElement rand_factored(Rng& rng, const LocalRingPtr& R,
                                   const std::vector<SymbolAtom>& pool) {
    FactoredLocalElement f = FactoredLocalElement::one(R);
    long cu = testing::rand_int(rng, 1, 124);
    if (cu % 5 == 0) ++cu;
    f = f.times_const(LocalNum(testing::rand_int(rng, -2, 2), R->from_int(cu)));
    for (const auto& a : pool)
        if (testing::rand_int(rng, 0, 2) == 0)
            f = f.times_atom(a, testing::rand_int(rng, -2, 2));
    if (testing::rand_int(rng, 0, 1) == 0) {
        std::vector<NFElem> tc = {NFElem(1)};
        for (int i = 0; i < testing::rand_int(rng, 1, 2); ++i)
            tc.push_back(NFElem(testing::rand_int(rng, -10, 10)));
        f = f.times_tail(embed_poly(R, Poly<NFElem>(tc)), testing::rand_int(rng, -1, 1));
    }
    return f;
}

}  // namespace

TEST_CASE("kato residue bimultiplicativity (120 random triples)") {
    Rng rng(777);
    auto R = z5();
    std::vector<SymbolAtom> pool = {atom_T(R), atom_lin(R, 5), atom_lin(R, 10),
                                    atom_lin(R, 20)};
    for (int i = 0; i < 120; ++i) {
        auto f1 = rand_factored(rng, R, pool);
        auto f2 = rand_factored(rng, R, pool);
        auto g = rand_factored(rng, R, pool);
        LocalNum lhs = kato_residue(f1 * f2, g);
        LocalNum rhs = kato_residue(f1, g) * kato_residue(f2, g);
        CHECK(lhs.v == rhs.v);
        CHECK((lhs.u - rhs.u).negligible());
        LocalNum lhs2 = kato_residue(g, f1 * f2);
        LocalNum rhs2 = kato_residue(g, f1) * kato_residue(g, f2);
        CHECK(lhs2.v == rhs2.v);
        CHECK((lhs2.u - rhs2.u).negligible());
    }
}

TEST_CASE("kato residue agrees when a squarefree atom is split into factors") {
    Rng rng(778);
    auto R = z5();
    // V = (T-5)(T-10) as one squarefree atom vs two linear atoms
    SymbolAtom V;
    V.poly = atom_lin(R, 5).poly * atom_lin(R, 10).poly;
    V.cert = AtomCert::squarefree_weierstrass;
    std::vector<SymbolAtom> pool_joint = {V, atom_T(R)};
    std::vector<SymbolAtom> pool_split = {atom_lin(R, 5), atom_lin(R, 10), atom_T(R)};
    for (int i = 0; i < 50; ++i) {
        long e1 = testing::rand_int(rng, -2, 2), e2 = testing::rand_int(rng, -2, 2);
        long d1 = testing::rand_int(rng, -2, 2), d2 = testing::rand_int(rng, -2, 2);
        long cu = 3;
        auto mk = [&](bool split, long eV, long eT) {
            FactoredLocalElement f = FactoredLocalElement::one(R);
            f = f.times_const(LocalNum(0, R->from_int(cu)));
            if (split) {
                f = f.times_atom(pool_split[0], eV).times_atom(pool_split[1], eV);
            } else {
                f = f.times_atom(V, eV);
            }
            f = f.times_atom(atom_T(R), eT);
            return f;
        };
        LocalNum a = kato_residue(mk(false, e1, e2), mk(false, d1, d2));
        LocalNum b = kato_residue(mk(true, e1, e2), mk(true, d1, d2));
        CHECK(a.v == b.v);
        CHECK((a.u - b.u).negligible());
    }
}

TEST_CASE("U-filtration compatibility of the residue") {
    Rng rng(779);
    auto R = z5();
    std::vector<SymbolAtom> pool = {atom_T(R), atom_lin(R, 5)};
    for (int i : {1, 2, 3}) {
        for (int trial = 0; trial < 20; ++trial) {
            auto f = rand_factored(rng, R, pool);
            auto g = rand_factored(rng, R, pool);
            // principal-unit perturbation at level i: 1 + pi^i * h(T)
            std::vector<NFElem> hc = {NFElem(1)};
            Int pi_i = pow_int(5, i);
            for (int j = 0; j < 2; ++j)
                hc.push_back(NFElem(Rat(pi_i * testing::rand_int(rng, 0, 9))));
            auto fp = f.times_tail(embed_poly(R, Poly<NFElem>(hc)), 1);
            LocalNum base = kato_residue(f, g);
            LocalNum pert = kato_residue(fp, g);
            CHECK(base.v == pert.v);
            // ratio is a principal unit at level >= i
            LocalElem ratio = pert.u * base.u.inverse() - R->one();
            bool ok = ratio.negligible() || ratio.val() >= i;
            CHECK(ok);
        }
    }
}
