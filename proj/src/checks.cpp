#include "arithsurf/checks.hpp"

#include <random>
#include <set>

#include "arithsurf/detcoh.hpp"
#include "arithsurf/errors.hpp"
#include "arithsurf/idelic.hpp"
#include "arithsurf/milnor.hpp"
#include "arithsurf/series2d.hpp"

namespace arithsurf {

namespace {

using Rng = std::mt19937_64;

long rint(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

NFElem rand_elem(Rng& rng, const NumberField& K, long span) {
    Rat a(rint(rng, -span, span), rint(rng, 1, span));
    if (K.is_rational()) return NFElem(K, a, 0);
    Rat b(rint(rng, -span, span), rint(rng, 1, span));
    return NFElem(K, a, b);
}

NFElem rand_nonzero(Rng& rng, const NumberField& K, long span) {
    for (;;) {
        NFElem x = rand_elem(rng, K, span);
        if (!x.is_zero()) return x;
    }
}

NFElem rand_integral(Rng& rng, const NumberField& K, long span) {
    if (K.is_rational()) return NFElem(K, Rat(rint(rng, -span, span)), 0);
    return NFElem(K, Rat(rint(rng, -span, span)), Rat(rint(rng, -span, span)));
}

Poly<NFElem> rand_monic(Rng& rng, const NumberField& K, int d, long span) {
    std::vector<NFElem> c(d + 1);
    for (int i = 0; i < d; ++i) c[i] = rand_integral(rng, K, span);
    c[d] = NFElem(K, 1, 0);
    return Poly<NFElem>(std::move(c));
}

Poly<NFElem> rand_irreducible(Rng& rng, const NumberField& K, int dmax, long span) {
    for (;;) {
        int d = static_cast<int>(rint(rng, 1, dmax));
        Poly<NFElem> q = rand_monic(rng, K, d, span);
        try {
            if (is_irreducible_monic(q)) return q;
        } catch (const unsupported_error&) {
        }
    }
}

// random factored function from a pool of atoms
FactoredFunction rand_function(Rng& rng, const NumberField& K,
                               const std::vector<Poly<NFElem>>& pool, long emax, long cspan) {
    FactoredFunction f = FactoredFunction::one(K);
    f = f.times_const(rand_nonzero(rng, K, cspan));
    for (const auto& q : pool)
        if (rint(rng, 0, 1) == 0) f = f.times_atom(q, rint(rng, -emax, emax));
    return f;
}

std::vector<PrimeOfB> context_primes() {
    std::vector<PrimeOfB> out;
    for (long p : {2, 3, 5, 7, 13})
        for (const auto& b : factor_prime(p, NumberField::Q())) out.push_back(b);
    for (long p : {2, 3, 5})
        for (const auto& b : factor_prime(p, NumberField::quadratic(-1))) out.push_back(b);
    return out;
}

bool is_one_at_precision(const LocalNum& v) {
    if (v.v != 0) return false;
    LocalElem d = v.u - v.u.R->one();
    return d.negligible();
}

}  // namespace

CheckResult check_symbol_laws(uint64_t seed, int cases, int /*prec*/) {
    CheckResult r;
    r.kind = "symbol-laws";
    Rng rng(seed);
    auto primes = context_primes();
    // p-adic contexts
    for (int i = 0; i < cases; ++i) {
        const PrimeOfB& b = primes[rint(rng, 0, primes.size() - 1)];
        auto k = residue_field(b);
        NFElem x = rand_nonzero(rng, b.field, 9);
        NFElem y = rand_nonzero(rng, b.field, 9);
        NFElem z = rand_nonzero(rng, b.field, 9);
        ++r.cases;
        NFElem om = NFElem(b.field, 1, 0) - x;
        if (!x.is_zero() && !om.is_zero() && !(tame_symbol(x, om, b, k) == k->one()))
            r.fail("steinberg failed at " + b.str());
        if (!(tame_symbol(x, y, b, k) * tame_symbol(y, x, b, k) == k->one()))
            r.fail("skew symmetry failed at " + b.str());
        if (!(tame_symbol(x * y, z, b, k) == tame_symbol(x, z, b, k) * tame_symbol(y, z, b, k)))
            r.fail("bimultiplicativity failed at " + b.str());
    }
    // F_q(t)-style contexts
    for (const long pq : {5L, 2L}) {
        auto F = FqCtx::prime_field(pq);
        std::vector<Poly<FqElem>> ms = {Poly<FqElem>::monomial(F->one(), 1),
                                        fq_monic_irreducibles(F, 2)[0]};
        for (const auto& m : ms) {
            auto kext = m.deg() == 1 ? F : FqCtx::extension(F, m);
            auto rand_fn = [&] {
                for (;;) {
                    std::vector<FqElem> nc, dc;
                    for (int i = 0; i <= rint(rng, 0, 2); ++i)
                        nc.push_back(F->element_at(rint(rng, 0, pq - 1)));
                    for (int i = 0; i <= rint(rng, 0, 2); ++i)
                        dc.push_back(F->element_at(rint(rng, 0, pq - 1)));
                    FqRational f{Poly<FqElem>(nc), Poly<FqElem>(dc)};
                    if (!f.num.is_zero() && !f.den.is_zero()) return f;
                }
            };
            for (int i = 0; i < cases / 4; ++i) {
                ++r.cases;
                FqRational a = rand_fn(), bb = rand_fn(), c = rand_fn();
                if (!(tame_symbol_fq(a, bb, m, kext) * tame_symbol_fq(bb, a, m, kext) ==
                      kext->one()))
                    r.fail("fq skew symmetry failed");
                FqRational ac{a.num * c.num, a.den * c.den};
                if (!(tame_symbol_fq(ac, bb, m, kext) ==
                      tame_symbol_fq(a, bb, m, kext) * tame_symbol_fq(c, bb, m, kext)))
                    r.fail("fq bimultiplicativity failed");
                Poly<FqElem> omn = a.den - a.num;
                if (!omn.is_zero() && !a.num.is_zero()) {
                    FqRational oma{omn, a.den};
                    if (!(tame_symbol_fq(a, oma, m, kext) == kext->one()))
                        r.fail("fq steinberg failed");
                }
            }
        }
    }
    return r;
}

CheckResult check_boundary_characterization(uint64_t seed, int cases, int /*prec*/) {
    CheckResult r;
    r.kind = "boundary-characterization";
    Rng rng(seed);
    auto primes = context_primes();
    int done = 0;
    while (done < cases) {
        const PrimeOfB& b = primes[rint(rng, 0, primes.size() - 1)];
        NFElem x = rand_nonzero(rng, b.field, 9);
        if (valuation_at(x, b) != 0) continue;
        auto k = residue_field(b);
        ++r.cases;
        if (!(tame_symbol(x, b.uniformizer(), b, k) == residue_at(x, b, k)))
            r.fail("boundary characterization failed at " + b.str());
        ++done;
    }
    return r;
}

namespace {

// fiber points where at least one atom of f or g degenerates; all other
// points carry the symbol 1 exactly (empty prime support and zero winding)
std::vector<ClosedPointOnX> active_fiber_points(const PrimeOfB& b, const FactoredFunction& f,
                                                const FactoredFunction& g, int maxdeg) {
    std::set<ClosedPointOnX> pts;
    auto kb = residue_field(b);
    auto add_atoms = [&](const FactoredFunction& u) {
        for (const auto& [q, e] : u.factors) {
            int c = content_at(q, b);
            Poly<NFElem> qi = q * b.uniformizer().pow(-c);
            Poly<FqElem> red;
            {
                auto R = LocalRing::completion(b, 8);
                red = reduce_poly(embed_poly(R, qi));
            }
            if (red.deg() >= 1) {
                for (const auto& [m, mult] : fq_factor(red)) {
                    if (m.deg() > maxdeg) continue;
                    ClosedPointOnX x;
                    x.b = b;
                    x.minpoly = m;
                    x.deg = m.deg();
                    pts.insert(x);
                }
            }
        }
    };
    add_atoms(f);
    add_atoms(g);
    ClosedPointOnX inf;
    inf.b = b;
    inf.at_infinity = true;
    pts.insert(inf);
    return std::vector<ClosedPointOnX>(pts.begin(), pts.end());
}

}  // namespace

CheckResult check_vertical_reciprocity(uint64_t seed, int cases, int prec) {
    CheckResult r;
    r.kind = "vertical-reciprocity";
    Rng rng(seed);
    NumberField Q = NumberField::Q();
    std::vector<PrimeOfB> fibers = {prime_above(2, Q), prime_above(3, Q), prime_above(5, Q)};
    for (int i = 0; i < cases; ++i) {
        const PrimeOfB& b = fibers[i % fibers.size()];
        std::vector<Poly<NFElem>> pool;
        int na = static_cast<int>(rint(rng, 1, 3));
        for (int j = 0; j < na; ++j) pool.push_back(rand_irreducible(rng, Q, 3, 6));
        FactoredFunction f = rand_function(rng, Q, pool, 2, 9);
        FactoredFunction g = rand_function(rng, Q, pool, 2, 9);
        ++r.cases;
        try {
            auto R0 = LocalRing::completion(b, prec);
            LocalNum prod(0, R0->one());
            auto active = active_fiber_points(b, f, g, 3);
            for (const auto& x : active) {
                LocalNum v = retry_with_precision(
                    [&](int pr) { return kato_symbol_vertical(x, f, g, pr); }, prec);
                prod = prod * v;
            }
            if (!is_one_at_precision(prod))
                r.fail("vertical reciprocity failed over " + b.str() + ": " + prod.str());
            // sample an inactive point and confirm it contributes exactly 1
            auto all = fiber_points(b, 2);
            for (const auto& x : all) {
                bool is_active = false;
                for (const auto& a : active) is_active = is_active || (a == x);
                if (is_active) continue;
                LocalNum v = kato_symbol_vertical(x, f, g, prec);
                if (!is_one_at_precision(v))
                    r.fail("inactive point contributed a nontrivial symbol at " + x.str());
                break;
            }
        } catch (const unsupported_error& e) {
            r.fail(std::string("unsupported configuration: ") + e.what());
        }
    }
    return r;
}

CheckResult check_point_reciprocity(uint64_t seed, int cases, int prec) {
    CheckResult r;
    r.kind = "point-reciprocity";
    Rng rng(seed);
    NumberField Q = NumberField::Q();
    std::vector<PrimeOfB> fibers = {prime_above(2, Q), prime_above(3, Q), prime_above(5, Q),
                                    prime_above(7, Q)};
    int done = 0;
    while (done < cases) {
        const PrimeOfB& b = fibers[rint(rng, 0, fibers.size() - 1)];
        auto pts = fiber_points(b, 2);
        const ClosedPointOnX& x = pts[rint(rng, 0, pts.size() - 1)];
        std::vector<Poly<NFElem>> pool;
        for (int j = 0; j < 2; ++j) pool.push_back(rand_irreducible(rng, Q, 2, 6));
        FactoredFunction f = rand_function(rng, Q, pool, 2, 9);
        FactoredFunction g = rand_function(rng, Q, pool, 2, 9);
        // curves through x: components of both divisors plus the fiber
        std::set<CurveOnX> ys;
        for (const auto& [y, n] : divisor_of_function(f).coeff) ys.insert(y);
        for (const auto& [y, n] : divisor_of_function(g).coeff) ys.insert(y);
        ys.insert(CurveOnX::vertical(b));
        ys.insert(CurveOnX::infinity_section());
        try {
            auto R0 = LocalRing::completion(b, prec);
            LocalNum prod(0, R0->one());
            for (const auto& y : ys) {
                if (y.kind == CurveOnX::Kind::vertical && !(y.b == b)) continue;
                LocalNum v = retry_with_precision(
                    [&](int pr) { return kato_symbol(Flag{x, y}, f, g, pr); }, prec);
                prod = prod * v;
            }
            ++r.cases;
            ++done;
            if (!is_one_at_precision(prod))
                r.fail("point reciprocity failed at " + x.str() + ": " + prod.str());
        } catch (const unsupported_error&) {
            continue;  // branched flag or degree bound: resample
        }
    }
    return r;
}

CheckResult check_descent(uint64_t seed, int cases, int prec) {
    CheckResult r;
    r.kind = "descent";
    Rng rng(seed);
    std::vector<NumberField> fields = {NumberField::Q(), NumberField::quadratic(-1)};
    int done = 0;
    while (done < cases) {
        const NumberField& K = fields[done % 2];
        Poly<NFElem> qd = rand_irreducible(rng, K, 3, 5);
        Poly<NFElem> qe = rand_irreducible(rng, K, 3, 5);
        if (qd == qe) continue;
        DivisorOnX D, E;
        D.add(CurveOnX::horizontal(qd), 1);
        E.add(CurveOnX::horizontal(qe), 1);
        try {
            IdeleTriple rr = canonical_lift(D, E, prec);
            IdeleTriple ss = canonical_lift(E, D, prec);
            PairingResult pr = idelic_pairing(rr, ss, prec);
            NFElem f = symmetry_correction(rr, ss);
            DivisorOnB expected = deligne_divisor(D, E, prec);
            if (!(f == NFElem(K, 1, 0))) expected = expected + principal_divisor(f);
            ++r.cases;
            ++done;
            if (!(pr.divisor == expected))
                r.fail("descent mismatch: got " + pr.divisor.str() + " expected " +
                       expected.str());
        } catch (const unsupported_error&) {
            continue;
        }
    }
    return r;
}

CheckResult check_resultant_oracle(uint64_t seed, int cases, int prec) {
    CheckResult r;
    r.kind = "resultant-oracle";
    Rng rng(seed);
    std::vector<NumberField> fields = {NumberField::Q(), NumberField::quadratic(-1)};
    int done = 0;
    while (done < cases) {
        const NumberField& K = fields[done % 2];
        Poly<NFElem> qd = rand_monic(rng, K, rint(rng, 1, 4), 6);
        Poly<NFElem> qe = rand_monic(rng, K, rint(rng, 1, 4), 6);
        if (poly_gcd(qd, qd.derivative()).deg() != 0) continue;
        if (poly_gcd(qe, qe.derivative()).deg() != 0) continue;
        if (poly_gcd(qd, qe).deg() != 0) continue;
        NFElem res = resultant(qd, qe);
        if (res.is_zero()) continue;
        try {
            // aggregate place data of q_D against q_E over every prime of
            // the resultant; this is the bilinear extension of
            // deligne_divisor to squarefree (possibly reducible) divisors
            DivisorOnB total;
            std::set<Int> ps;
            Rat nr = res.norm();
            for (const auto& [p, k] : factor_integer(abs(nr.get_num()))) ps.insert(p);
            for (const auto& [p, k] : factor_integer(nr.get_den())) ps.insert(p);
            for (const Int& p : ps) {
                for (const auto& b : factor_prime(p, K)) {
                    int acc = retry_with_precision(
                        [&](int pr) {
                            int a = 0;
                            for (const auto& pl : places_above(qd, b, pr))
                                a += pl.vb_norm_of(qe);
                            return a;
                        },
                        prec);
                    total.add(b, acc);
                }
            }
            ++r.cases;
            ++done;
            if (!(total == principal_divisor(res)))
                r.fail("oracle mismatch for deg (" + std::to_string(qd.deg()) + "," +
                       std::to_string(qe.deg()) + ")");
        } catch (const unsupported_error&) {
            continue;
        }
    }
    return r;
}

CheckResult check_lift_independence(uint64_t seed, int cases, int prec) {
    CheckResult r;
    r.kind = "lift-independence";
    Rng rng(seed);
    NumberField K = NumberField::quadratic(-5);
    // sanity control: the witness ideal above 2 must be non-principal
    {
        DivisorOnB p2;
        p2.add(prime_above(2, K), 1);
        r.cases++;
        if (divisor_class_reduce(p2, K).principal)
            r.fail("sanity control failed: p2 reported principal");
    }
    int done = 0;
    while (done < cases) {
        Poly<NFElem> qd = rand_irreducible(rng, K, 2, 4);
        Poly<NFElem> qe = rand_irreducible(rng, K, 2, 4);
        if (qd == qe) continue;
        DivisorOnX D, E;
        auto yD = CurveOnX::horizontal(qd);
        D.add(yD, 1);
        auto yE = CurveOnX::horizontal(qe);
        E.add(yE, 1);
        try {
            IdeleTriple rr = canonical_lift(D, E, prec);
            IdeleTriple ss = canonical_lift(E, D, prec);
            DivisorOnB base = idelic_pairing(rr, ss, prec).divisor;
            // perturb the alpha defaults of both lifts by units along their
            // curves, and the beta of r by a unit at its stored points
            long c = rint(rng, 1, 5);
            FactoredFunction u = FactoredFunction::one(K)
                                     .times_atom(rand_irreducible(rng, K, 1, 4), 1)
                                     .times_const(NFElem(K, Rat(1, c), 0));
            IdeleTriple ss2 = curve_valuation(yE, u) == 0 ? ss.with_alpha_unit(yE, u) : ss;
            IdeleTriple rr2 = rr;
            for (const auto& [x, v] : rr.beta_point) {
                // perturb beta by a constant that is a unit at the point
                for (long w : {3, 7, 11, 13}) {
                    NFElem we(K, Rat(w), 0);
                    if (valuation_at(we, x.b) != 0) continue;
                    rr2 = rr2.with_beta_unit(x, FactoredFunction::from_constant(we));
                    break;
                }
                break;
            }
            DivisorOnB d2 = idelic_pairing(rr2, ss2, prec).divisor;
            ++r.cases;
            ++done;
            if (!same_class(d2, base, K))
                r.fail("class changed under unit perturbation of the lifts");
        } catch (const unsupported_error&) {
            continue;
        }
    }
    return r;
}

CheckResult check_boundary_vanishing(uint64_t seed, int cases, int prec) {
    CheckResult r;
    r.kind = "boundary-vanishing";
    Rng rng(seed);
    NumberField K = NumberField::quadratic(-5);
    int done = 0;
    while (done < cases) {
        // boundary triple from a global rational function
        FactoredFunction l = FactoredFunction::one(K)
                                 .times_atom(rand_irreducible(rng, K, 2, 4), rint(rng, 1, 2))
                                 .times_const(rand_nonzero(rng, K, 5));
        Poly<NFElem> qe = rand_irreducible(rng, K, 2, 4);
        DivisorOnX E;
        E.add(CurveOnX::horizontal(qe), 1);
        DivisorOnX dl = divisor_of_function(l);
        bool shared = false;
        for (const auto& [y, n] : dl.coeff) shared = shared || E.coeff.count(y);
        if (shared) continue;
        try {
            IdeleTriple rb = boundary_triple(l, {}, {});
            IdeleTriple s = canonical_lift(E, dl, prec);
            PairingResult pr = idelic_pairing(rb, s, prec);
            PairingResult pr2 = idelic_pairing(s, rb, prec);
            ++r.cases;
            ++done;
            if (!pr.cls.principal || !pr2.cls.principal)
                r.fail("boundary triple paired to a non-principal class");
        } catch (const unsupported_error&) {
            continue;
        }
    }
    return r;
}

CheckResult check_detcoh_consistency(uint64_t seed, int /*cases*/, int prec) {
    CheckResult r;
    r.kind = "detcoh-consistency";
    (void)seed;
    std::vector<NumberField> fields = {NumberField::Q(), NumberField::quadratic(-1),
                                       NumberField::quadratic(-5)};
    for (const NumberField& K : fields) {
        DivisorOnB trivial, p2;
        p2.add(prime_above(2, K), 1);
        std::vector<DivisorOnB> twists = {trivial, p2};
        for (const DivisorOnB& twL : twists) {
            for (const DivisorOnB& twM : twists) {
                for (int a = -2; a <= 3; ++a) {
                    for (int bdeg = -2; bdeg <= 3; ++bdeg) {
                        ModelLineBundle L{K, a, twL};
                        ModelLineBundle M{K, bdeg, twM};
                        ++r.cases;
                        try {
                            DivisorOnB adelic = adelic_deligne_divisor(L, M);
                            // disjoint divisor representatives
                            std::vector<PrimeOfB> avoid;
                            for (const auto& [b, e] : twL.coeff) avoid.push_back(b);
                            ModelLineBundle M2 = M;
                            M2.twist = equivalent_divisor_avoiding(twM, avoid, K);
                            DivisorOnX DL = bundle_divisor(L, 0);
                            DivisorOnX DM = bundle_divisor(M2, 1);
                            DivisorOnB direct = deligne_divisor(DL, DM, prec);
                            if (!same_class(adelic, direct, K)) {
                                r.fail("adelic/divisor class mismatch");
                                continue;
                            }
                            PairingResult pr = idelic_pairing(canonical_lift(DL, DM, K, prec),
                                                              canonical_lift(DM, DL, K, prec), prec);
                            if (!same_class(pr.divisor, direct, K)) {
                                r.fail("idelic/divisor class mismatch");
                                continue;
                            }
                            // determinant invariance under the auxiliary choice
                            int m = default_aux_degree(L);
                            DivisorOnB d0 = det_rphi(L, m);
                            if (!(det_rphi(L, m + 1) == d0) || !(det_rphi(L, m + 2) == d0))
                                r.fail("det_rphi depends on the auxiliary divisor");
                            if (!(det_rphi_adelic(L, m) == d0))
                                r.fail("adelic determinant disagrees with the direct one");
                        } catch (const arith_error& e) {
                            r.fail(std::string("detcoh case error: ") + e.what());
                        }
                    }
                }
            }
        }
    }
    return r;
}

CheckResult check_series_laws(uint64_t seed, int cases, int prec) {
    CheckResult r;
    r.kind = "series-laws";
    Rng rng(seed);
    auto R = LocalRing::completion(prime_above(5, NumberField::Q()), prec);
    auto rand_series = [&](bool unit0) {
        DoubleSeries s(R);
        int n = static_cast<int>(rint(rng, 1, 5));
        for (int i = 0; i < n; ++i) {
            int j = static_cast<int>(rint(rng, -4, 4));
            long c = rint(rng, 1, 124);
            if (c % 5 == 0) ++c;
            int k = static_cast<int>(rint(rng, 0, 3));
            if (unit0 && i == 0) {
                j = 0;
                k = 0;
            }
            NFElem coeff = NFElem(c) * NFElem(Rat(pow_int(5, k)));
            s = s + DoubleSeries::from_terms(R, {{j, coeff}});
        }
        return s;
    };
    for (int i = 0; i < cases; ++i) {
        DoubleSeries f = rand_series(false), g = rand_series(false);
        ++r.cases;
        try {
            int vf = f.val(), vg = g.val();
            DoubleSeries fg = f * g;
            if (fg.val() != vf + vg) r.fail("valuation additivity failed");
            if (vf == 0 && vg == 0) {
                if (!(fg.reduce() == f.reduce() * g.reduce()))
                    r.fail("reduction homomorphism failed");
                if (fg.winding_number() != f.winding_number() + g.winding_number())
                    r.fail("winding additivity failed");
            }
        } catch (const precision_error&) {
            // indistinguishable-from-zero draws do not count as cases
            --r.cases;
            --i;
        }
    }
    return r;
}

CheckResult check_winding_symbol_identity(uint64_t seed, int cases, int prec) {
    CheckResult r;
    r.kind = "winding-symbol-identity";
    Rng rng(seed);
    NumberField Q = NumberField::Q();
    auto b5 = prime_above(5, Q);
    auto R = LocalRing::completion(b5, prec);
    ClosedPointOnX x0;
    x0.b = b5;
    x0.minpoly = Poly<FqElem>::monomial(residue_field(b5)->one(), 1);
    x0.deg = 1;
    Poly<NFElem> t_atom = Poly<NFElem>::monomial(NFElem(1), 1);
    int done = 0;
    while (done < cases) {
        // s = c * 5^a * t^m * prod q_i^{e_i} with nonnegative atom exponents
        long cu = rint(rng, 1, 24);
        if (cu % 5 == 0) ++cu;
        long a = rint(rng, 0, 2), m = rint(rng, -2, 2);
        FactoredFunction s = FactoredFunction::one(Q)
                                 .times_const(NFElem(cu) * NFElem(Rat(pow_int(5, a))))
                                 .times_atom(t_atom, m);
        DoubleSeries ser(R);
        ser.set_coeff(m, R->embed(NFElem(cu) * NFElem(Rat(pow_int(5, a)))));
        for (int j = 0; j < 2; ++j) {
            if (rint(rng, 0, 1) == 0) continue;
            Poly<NFElem> q = rand_monic(rng, Q, rint(rng, 1, 2), 6);
            if (q.coeff(0).is_zero()) continue;
            try {
                if (!is_irreducible_monic(q)) continue;
            } catch (const unsupported_error&) {
                continue;
            }
            long e = rint(rng, 1, 2);
            s = s.times_atom(q, e);
            for (long rep = 0; rep < e; ++rep) {
                std::vector<std::pair<int, NFElem>> terms;
                for (int i = 0; i <= q.deg(); ++i)
                    if (!q.coeff(i).is_zero()) terms.push_back({i, q.coeff(i)});
                ser = ser * DoubleSeries::from_terms(R, terms);
            }
        }
        long rexp = rint(rng, 1, 3);
        FactoredFunction pr = FactoredFunction::from_constant(NFElem(Rat(pow_int(5, rexp))));
        try {
            int w = ser.winding_number();
            LocalNum sym = kato_symbol_vertical(x0, pr, s, prec);
            ++r.cases;
            ++done;
            // pinned sign: (p^r, s) = p^{-r w(s)} under the inverted-residue
            // boundary convention
            if (sym.v != -static_cast<int>(rexp) * w)
                r.fail("winding identity failed: v=" + std::to_string(sym.v) +
                       " expected " + std::to_string(-rexp * w));
        } catch (const precision_error&) {
            continue;
        }
    }
    return r;
}

CheckResult check_precision_robustness(uint64_t seed, int cases, int prec) {
    // Replays the vertical-reciprocity case stream and recomputes every
    // flag symbol at both `prec` and `2*prec` digits; the valuations must
    // agree case by case.
    CheckResult r;
    r.kind = "precision-robustness";
    Rng rng(seed);
    NumberField Q = NumberField::Q();
    std::vector<PrimeOfB> fibers = {prime_above(2, Q), prime_above(3, Q), prime_above(5, Q)};
    for (int i = 0; i < cases; ++i) {
        const PrimeOfB& b = fibers[i % fibers.size()];
        std::vector<Poly<NFElem>> pool;
        int na = static_cast<int>(rint(rng, 1, 3));
        for (int j = 0; j < na; ++j) pool.push_back(rand_irreducible(rng, Q, 3, 6));
        FactoredFunction f = rand_function(rng, Q, pool, 2, 9);
        FactoredFunction g = rand_function(rng, Q, pool, 2, 9);
        ++r.cases;
        try {
            for (const auto& x : active_fiber_points(b, f, g, 3)) {
                LocalNum v1 = retry_with_precision(
                    [&](int pr) { return kato_symbol_vertical(x, f, g, pr); }, prec);
                LocalNum v2 = retry_with_precision(
                    [&](int pr) { return kato_symbol_vertical(x, f, g, pr); }, prec * 2,
                    std::max(2048, prec * 2));
                if (v1.v != v2.v) r.fail("valuation changed between precisions at " + x.str());
            }
        } catch (const unsupported_error& e) {
            r.fail(std::string("unsupported configuration: ") + e.what());
        }
    }
    return r;
}

std::vector<std::string> check_kinds() {
    return {"symbol-laws",         "boundary-characterization",
            "vertical-reciprocity", "point-reciprocity",
            "descent",             "resultant-oracle",
            "lift-independence",   "boundary-vanishing",
            "detcoh-consistency",  "series-laws",
            "winding-symbol-identity", "precision-robustness"};
}

CheckResult run_check(const std::string& kind, uint64_t seed, int cases, int prec) {
    if (kind == "symbol-laws") return check_symbol_laws(seed, cases, prec);
    if (kind == "boundary-characterization") return check_boundary_characterization(seed, cases, prec);
    if (kind == "vertical-reciprocity") return check_vertical_reciprocity(seed, cases, prec);
    if (kind == "point-reciprocity") return check_point_reciprocity(seed, cases, prec);
    if (kind == "descent") return check_descent(seed, cases, prec);
    if (kind == "resultant-oracle") return check_resultant_oracle(seed, cases, prec);
    if (kind == "lift-independence") return check_lift_independence(seed, cases, prec);
    if (kind == "boundary-vanishing") return check_boundary_vanishing(seed, cases, prec);
    if (kind == "detcoh-consistency") return check_detcoh_consistency(seed, cases, prec);
    if (kind == "series-laws") return check_series_laws(seed, cases, prec);
    if (kind == "winding-symbol-identity") return check_winding_symbol_identity(seed, cases, prec);
    if (kind == "precision-robustness") return check_precision_robustness(seed, cases, prec);
    throw value_error("unknown check kind: " + kind);
}

}  // namespace arithsurf
