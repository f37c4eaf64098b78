#pragma once

#include "arithsurf/localring.hpp"

namespace arithsurf {

enum class FactorCert {
    degree1,           // linear factor
    unramified,        // irreducible residue, multiplicity one
    newton_slope,      // single Newton segment of slope h/deg in lowest terms
    scaled_unramified  // irreducible residue after an integer-slope scaling
};

struct LocalFactor {
    Poly<LocalElem> poly;  // monic, integral, irreducible over K_b
    int e = 1;
    int f = 1;
    FactorCert cert = FactorCert::degree1;
};

// Irreducible factorization over K_b of a monic squarefree polynomial with
// b-integral coefficients.  Throws unsupported_error for shapes outside the
// certificate classes, precision_error when separation fails at this
// precision (caller retries with doubled precision).
std::vector<LocalFactor> hensel_factor(const Poly<NFElem>& P, const PrimeOfB& b, int prec = 64);

// Internal form working directly over a ring (also used on extensions).
std::vector<LocalFactor> hensel_factor_over(const LocalRingPtr& R, const Poly<LocalElem>& P);

// Split P = G*H given a coprime factorization of the reduction, G monic.
// P itself need not be monic; H absorbs the leading coefficient.
std::pair<Poly<LocalElem>, Poly<LocalElem>> hensel_split(const Poly<LocalElem>& P,
                                                         const Poly<FqElem>& Gbar,
                                                         const Poly<FqElem>& Hbar);

struct WeierstrassParts {
    int p_exponent = 0;            // power of the uniformizer factored out
    Poly<LocalElem> unit_poly;     // unit constant term (a unit of O[[t]])
    Poly<LocalElem> distinguished; // monic, non-leading coefficients in the maximal ideal
};

// q = pi^p_exponent * unit_poly * distinguished, to working precision.
WeierstrassParts weierstrass_prepare(const Poly<LocalElem>& q);

// A place of the function field K[t]/(h) above b: an irreducible factor of
// h over K_b.  Factors of roots with negative valuation are kept in the
// reversed coordinate (at_infinity).
struct PlaceAbove {
    PrimeOfB b;
    Poly<NFElem> h_global;
    Poly<LocalElem> factor;  // monic integral; reversed coordinate if at_infinity
    bool at_infinity = false;
    int e = 1;
    int f = 1;
    FactorCert cert = FactorCert::degree1;
    LocalRingPtr ring;
    // minimal polynomial over k(b) of the underlying fiber point (the
    // radical of the factor's reduction); for at_infinity places the fiber
    // point is the infinity point and this holds the reversed-variable
    // minimal polynomial, always t.
    Poly<FqElem> point_minpoly;

    // N_{k(h)_x | K_b}(g(theta)) as a unit-power in K_b.
    LocalNum local_norm(const Poly<NFElem>& g) const;
    // normalized place valuation of g(theta)
    int val_of(const Poly<NFElem>& g) const;
    // v_b of the local norm = f * val_of
    int vb_norm_of(const Poly<NFElem>& g) const;
};

// h monic irreducible over K; coefficients may be non-integral at b (the
// corresponding places sit over the infinity point of the fiber).
std::vector<PlaceAbove> places_above(const Poly<NFElem>& h, const PrimeOfB& b, int prec = 64);

// content-stripped min valuation of the embedded coefficients
int poly_content_val(const Poly<LocalElem>& f);

}  // namespace arithsurf
