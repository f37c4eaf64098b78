#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arithsurf/numberfield.hpp"

namespace arithsurf {

class LocalRing;
using LocalRingPtr = std::shared_ptr<const LocalRing>;

// Element of the valuation ring O of K_b (or of an unramified extension
// k_L of K_b), held as integer coordinates modulo p^M in the basis
// { omega^i * psi^j }.  `known` counts trustworthy low p-digits of the
// coordinates; exact inputs start at M and division by p eats into it.
class LocalElem {
  public:
    LocalRingPtr R;
    std::vector<Int> c;
    int known = 0;

    LocalElem() = default;
    LocalElem(LocalRingPtr ring, std::vector<Int> coords, int known_digits);

    bool stored_zero() const;  // coordinates all 0 mod p^M
    LocalElem operator+(const LocalElem& o) const;
    LocalElem operator-(const LocalElem& o) const;
    LocalElem operator*(const LocalElem& o) const;
    // valuation in pi-units; precision_error when indistinguishable from 0
    int val() const;
    std::optional<int> val_opt() const;  // nullopt when indistinguishable from 0
    bool is_unit() const { return val_opt() == 0; }
    LocalElem inverse() const;  // unit inverse
    LocalElem pow(long e) const;
    // exact coordinate division by p^k; known drops by k
    LocalElem div_p(int k) const;
    // image in the residue field (needs known >= 1)
    FqElem residue() const;
    // zero to working precision, with a safety margin of p-digits
    bool negligible(int margin = 4) const;
    std::string str() const;
};

inline bool coeff_is_zero(const LocalElem& x) { return x.stored_zero(); }
inline LocalElem coeff_inverse(const LocalElem& x) { return x.inverse(); }
LocalElem coeff_one(const LocalElem& x);

// pi^val * unit with unit a unit of O.
class LocalNum {
  public:
    int v = 0;
    LocalElem u;  // a unit

    LocalNum() = default;
    LocalNum(int val, LocalElem unit) : v(val), u(std::move(unit)) {}

    LocalNum operator*(const LocalNum& o) const { return {v + o.v, u * o.u}; }
    LocalNum inverse() const { return {-v, u.inverse()}; }
    LocalNum pow(long e) const;
    LocalNum operator+(const LocalNum& o) const;
    bool is_one_to_precision() const;
    FqElem residue_unit() const { return u.residue(); }
    std::string str() const;
};

class LocalRing : public std::enable_shared_from_this<LocalRing> {
  public:
    PrimeOfB b;
    Int p;
    int M = 0;   // coordinates mod p^M
    Int pM;
    int e = 1;          // ramification of K_b over Q_p
    int base_dim = 1;   // [K_b : Q_p] as a Z_p-module rank
    int ext_deg = 1;    // unramified extension on top of K_b
    int dim = 1;
    // base structure
    Int omega_root;     // split: Hensel-lifted root mod p^M; ramified: residue double root
    Int min_lin, min_con;  // omega^2 + lin*omega + con = 0 (base_dim == 2)
    // unramified extension: monic minpoly of psi over the base, coefficients
    // as base-coordinate pairs
    std::vector<std::vector<Int>> ext_min;
    LocalRingPtr base;  // the ext_deg == 1 ring under an extension
    // residue data
    FqCtxPtr kb;        // k(b)
    FqCtxPtr kres;      // residue field of this ring
    Poly<FqElem> ext_residue_minpoly;  // over kb (ext_deg > 1)

    // K_b itself at coordinate precision M.
    static LocalRingPtr completion(const PrimeOfB& b, int M);
    // Unramified extension with residue field kb[x]/(rpoly).
    static LocalRingPtr unramified_extension(const LocalRingPtr& base, const Poly<FqElem>& rpoly);

    int abs_f() const { return (base_dim / e) * ext_deg; }

    LocalElem zero() const;
    LocalElem one() const;
    LocalElem from_int(const Int& n) const;
    LocalElem omega() const;      // image of omega (base_dim 2: basis vector)
    LocalElem psi() const;        // extension generator
    LocalElem uniformizer() const;
    LocalElem pi_pow(int k) const;        // k >= 0
    // embed a b-integral element of K (v_b >= 0); exact up to precision
    LocalElem embed_integral(const NFElem& x) const;
    // embed any nonzero element of K as val + unit, exact valuation
    LocalNum embed(const NFElem& x) const;
    LocalNum unit_split(const LocalElem& z) const;  // z = pi^v * u
    LocalElem lift_residue(const FqElem& a) const;
    // norm from this ring down to its base (ext_deg x ext_deg determinant);
    // identity when ext_deg == 1
    LocalElem norm_to_base(const LocalElem& z) const;
    LocalNum norm_to_base(const LocalNum& z) const;

    bool same_as(const LocalRing& o) const;

    // residue-field image of each flat basis element omega^i psi^j
    const std::vector<FqElem>& basis_residues() const;
    std::vector<FqElem> basis_res_;
};

// Reduction of a polynomial to the residue field (each coefficient must
// have known >= 1; nonintegral input is a caller bug).
Poly<FqElem> reduce_poly(const Poly<LocalElem>& f);
Poly<LocalElem> lift_poly(const LocalRingPtr& R, const Poly<FqElem>& f);
Poly<LocalElem> embed_poly(const LocalRingPtr& R, const Poly<NFElem>& f);

// Res(A, B) for monic A over the local ring: determinant of the
// multiplication-by-B map on R[T]/(A).
LocalElem resultant_monic(const Poly<LocalElem>& A, const Poly<LocalElem>& B);

}  // namespace arithsurf
