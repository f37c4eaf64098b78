#pragma once

#include "arithsurf/milnor.hpp"
#include "arithsurf/surface.hpp"

namespace arithsurf {

// A flag x in y on the surface.
struct Flag {
    ClosedPointOnX x;
    CurveOnX y;

    bool operator==(const Flag& o) const { return x == o.x && y == o.y; }
    bool operator<(const Flag& o) const { return x < o.x || (x == o.x && y < o.y); }
    std::string str() const { return y.str() + " @ " + x.str(); }
};

// Element of the two-dimensional local field at a flag, split as a power of
// the flag uniformizer times a unit part (Prop-style normal form).  The
// uniformizer is the defining polynomial for a horizontal curve and the
// local uniformizer of K_b for a vertical fiber.
struct FlagLocalElement {
    Flag flag;
    long m = 0;
    FactoredFunction unit_part;
};

FlagLocalElement flag_local(const Flag& flag, const FactoredFunction& f);

// rewrite a factored function in the chart at infinity (s = 1/t); the
// result's atoms are monic polynomials in s
FactoredFunction to_infinity_chart(const FactoredFunction& f);

// N_{k(y)|K} of the tame symbol of f, g along a horizontal curve (or the
// infinity section); exact in K.
NFElem horizontal_symbol_global(const CurveOnX& y, const FactoredFunction& f,
                                const FactoredFunction& g);

// norm of the class of a v_y-unit u at one place of y over b
LocalNum place_norm_of_function(const PlaceAbove& pl, const FactoredFunction& u);

// flag symbol at one place of a horizontal curve (the local factor of the
// global symbol)
LocalNum kato_symbol_horizontal(const PlaceAbove& pl, const CurveOnX& y,
                                const FactoredFunction& f, const FactoredFunction& g);

// flag symbol on a vertical fiber at the closed point x: recentre at x,
// Weierstrass-factor, take the boundary map and norm down to K_b
LocalNum kato_symbol_vertical(const ClosedPointOnX& x, const FactoredFunction& f,
                              const FactoredFunction& g, int prec = 64);

// Kato symbol of the flag, dispatching on the curve kind.  Returns 1 when
// x does not lie on y (the empty product over local branches); rejects
// branched flags.
LocalNum kato_symbol(const Flag& flag, const FactoredFunction& f, const FactoredFunction& g,
                     int prec = 64);

// the factored form of f at the vertical flag (exposed for tests)
FactoredLocalElement vertical_factored_form(const LocalRingPtr& R, const ClosedPointOnX& x,
                                            const FactoredFunction& f);

}  // namespace arithsurf
