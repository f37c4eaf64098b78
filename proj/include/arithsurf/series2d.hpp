#pragma once

#include <map>

#include "arithsurf/localring.hpp"

namespace arithsurf {

// Laurent polynomial over the residue field k(b): the reduction of an
// integral double series, with exact leading (lowest) exponent.
struct ResidueLaurent {
    FqCtxPtr k;
    std::map<int, FqElem> coeff;  // exponent -> nonzero residue

    bool is_zero() const { return coeff.empty(); }
    int leading_exponent() const;
    ResidueLaurent operator*(const ResidueLaurent& o) const;
    bool operator==(const ResidueLaurent& o) const;
    std::string str() const;
};

// Element of K_b{{t}} on a finite coefficient window.  Coefficients below
// the window are zero, coefficients above it are integral of valuation at
// least tail_floor (kInfinity when the tail is exactly zero).  error_floor
// bounds what the stored coefficients are trusted modulo.
class DoubleSeries {
  public:
    static constexpr int kInfinity = 1 << 28;

    LocalRingPtr R;
    std::map<int, LocalNum> coeffs;  // sparse; absent = zero
    int jmin = 0, jmax = -1;
    int tail_floor = kInfinity;
    int error_floor = kInfinity;

    DoubleSeries() = default;
    explicit DoubleSeries(LocalRingPtr ring) : R(std::move(ring)) {}

    static DoubleSeries from_terms(const LocalRingPtr& R,
                                   const std::vector<std::pair<int, NFElem>>& terms,
                                   int tail_floor = kInfinity);
    void set_coeff(int j, const LocalNum& v);

    DoubleSeries operator+(const DoubleSeries& o) const;
    DoubleSeries operator*(const DoubleSeries& o) const;

    // inf_j v(a_j); exact, or throws precision_error when the series is
    // indistinguishable from zero at this precision.
    int val() const;
    // coefficient-wise reduction; requires val() == 0
    ResidueLaurent reduce() const;
    // t-adic leading exponent of the reduction of pi^{-val} * this
    int winding_number() const;

    std::string str() const;
};

}  // namespace arithsurf
