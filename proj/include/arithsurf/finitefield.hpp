#pragma once

#include <memory>
#include <string>
#include <vector>

#include "arithsurf/poly.hpp"

namespace arithsurf {

class FqCtx;
using FqCtxPtr = std::shared_ptr<const FqCtx>;

// Element of a finite field F_q, q = p^n, represented by coordinates in
// the power basis of a (possibly two-level) tower over F_p.  A
// default-constructed element is a free-floating zero that adopts the
// context of whatever it is combined with.
class FqElem {
  public:
    FqCtxPtr ctx;
    std::vector<Int> coords;

    FqElem() = default;
    FqElem(FqCtxPtr c, std::vector<Int> v);

    bool is_zero() const;
    bool operator==(const FqElem& o) const;

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator*(const FqElem& o) const;
    FqElem inverse() const;
    FqElem pow(const Int& e) const;

    std::string str() const;
};

inline bool coeff_is_zero(const FqElem& x) { return x.is_zero(); }
inline FqElem coeff_inverse(const FqElem& x) { return x.inverse(); }
FqElem coeff_one(const FqElem& x);

class FqCtx : public std::enable_shared_from_this<FqCtx> {
  public:
    Int p;
    FqCtxPtr base;           // null for the prime field
    Poly<FqElem> modulus;    // monic irreducible over base (extension only)
    int rel_deg = 1;         // [this : base]
    int abs_deg = 1;         // [this : F_p]

    static FqCtxPtr prime_field(const Int& p);
    // modulus must be monic and irreducible over base.
    static FqCtxPtr extension(const FqCtxPtr& base, const Poly<FqElem>& modulus);

    Int order() const { return pow_int(p, abs_deg); }
    FqElem zero() const;
    FqElem one() const;
    FqElem gen() const;                       // class of x in base[x]/modulus
    FqElem from_int(const Int& n) const;      // image of an integer
    FqElem embed_base(const FqElem& v) const; // base -> this
    // Enumeration: index in [0, order).
    FqElem element_at(const Int& index) const;

    bool same_as(const FqCtx& o) const;
};

// Split into monic irreducible factors with multiplicity.  Roots are found
// by exhaustive search (fields here are small); rootless parts of degree 2
// and 3 are certified irreducible, degree 4 via a Frobenius-fixed-points
// test.  Anything else is rejected.
std::vector<std::pair<Poly<FqElem>, int>> fq_factor(const Poly<FqElem>& f);

bool fq_is_irreducible(const Poly<FqElem>& f);

// All monic irreducible polynomials of exact degree d over the field.
std::vector<Poly<FqElem>> fq_monic_irreducibles(const FqCtxPtr& ctx, int d);

std::string poly_str(const Poly<FqElem>& f, const std::string& var = "t");

}  // namespace arithsurf
