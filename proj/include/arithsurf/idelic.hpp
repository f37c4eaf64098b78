#pragma once

#include <optional>

#include "arithsurf/kato.hpp"

namespace arithsurf {

// Sparse symbolic element (alpha, beta, alpha^-1 beta^-1) of ker(d^1_x):
// the alpha component is a per-curve family given by a global default times
// finitely many per-curve factors, the beta component a per-point family.
// The third component is implicitly (alpha*beta)^-1.  Unit conditions are
// validated on the stored support lattice; away from it the data describes
// the canonical completion (local equations), which no finite computation
// ever reads.
class IdeleTriple {
  public:
    NumberField K;
    FactoredFunction alpha_global;
    std::map<CurveOnX, FactoredFunction> alpha_curve;
    FactoredFunction beta_global;
    std::map<ClosedPointOnX, FactoredFunction> beta_point;

    explicit IdeleTriple(NumberField k)
        : K(k), alpha_global(FactoredFunction::one(k)), beta_global(FactoredFunction::one(k)) {}

    FactoredFunction alpha_at(const CurveOnX& y) const;
    FactoredFunction beta_at(const ClosedPointOnX& x) const;

    // multiply the alpha default on one curve by a unit of O_y (used by the
    // lift-independence tests)
    IdeleTriple with_alpha_unit(const CurveOnX& y, const FactoredFunction& u) const;
    IdeleTriple with_beta_unit(const ClosedPointOnX& x, const FactoredFunction& u) const;

    // unit-membership checks at the stored flags
    void validate(int prec = 64) const;
};

IdeleTriple identity_triple(const NumberField& K);

// divisor_of(r) = sum_y v_y(alpha_y) [y]
DivisorOnX divisor_of(const IdeleTriple& r);

// Canonical lift of D against a partner divisor E (no common components):
// alpha carries the defining equations along the components of D, beta the
// inverse local equations of D at the points of D meet E.
IdeleTriple canonical_lift(const DivisorOnX& D, const DivisorOnX& partner, int prec = 64);
IdeleTriple canonical_lift(const DivisorOnX& D, const DivisorOnX& partner, const NumberField& K,
                           int prec);

// triple from boundary data: alpha = l * m^-1, beta = t * l^-1 with l a
// global rational function, m per-curve units, t per-point units
IdeleTriple boundary_triple(const FactoredFunction& l,
                            const std::map<CurveOnX, FactoredFunction>& m_units,
                            const std::map<ClosedPointOnX, FactoredFunction>& t_units);

// sound finite superset of the primes below flags that can contribute
std::vector<PrimeOfB> active_primes(const IdeleTriple& r, const IdeleTriple& s);

// sound finite superset of contributing flags over b
std::vector<Flag> active_flags(const IdeleTriple& r, const IdeleTriple& s, const PrimeOfB& b,
                               int prec = 64);

// n_b(r,s) = sum over flags over b of v_b((gamma_s, beta_r)_{x,y})
long n_b(const IdeleTriple& r, const IdeleTriple& s, const PrimeOfB& b, int prec = 64);

struct PairingResult {
    DivisorOnB divisor;
    ClassOnB cls;
    std::optional<NFElem> principal_correction;  // f with <r,s> = <s,r> + div(f)
};

PairingResult idelic_pairing(const IdeleTriple& r, const IdeleTriple& s, int prec = 64);

// f = prod over horizontal curves of (alpha_r, alpha_s)_y, the exact
// symmetry defect of the pairing
NFElem symmetry_correction(const IdeleTriple& r, const IdeleTriple& s);

}  // namespace arithsurf
