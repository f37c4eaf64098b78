#pragma once

#include "arithsurf/padic.hpp"

namespace arithsurf {

// The model surface P^1 over O_K, covered by the affine coordinate t and
// the chart at infinity s = 1/t.
struct ArithmeticSurfaceModel {
    NumberField base;
};

// Rational function on the surface in factored form: a constant of K^x
// times monic polynomial atoms in t with integer exponents.  The chart at
// infinity never needs its own atoms: s = t^{-1} and s-chart local
// equations are Laurent monomial multiples of t-chart ones.
class FactoredFunction {
  public:
    NumberField K;
    NFElem constant;
    std::vector<std::pair<Poly<NFElem>, long>> factors;  // monic, exponent != 0

    FactoredFunction() : constant(NFElem(1)) {}
    explicit FactoredFunction(NumberField k) : K(k), constant(NFElem(k, 1, 0)) {}

    static FactoredFunction one(const NumberField& K) { return FactoredFunction(K); }
    static FactoredFunction from_constant(const NFElem& c);
    FactoredFunction times_atom(const Poly<NFElem>& q, long e) const;
    FactoredFunction times_const(const NFElem& c) const;
    FactoredFunction operator*(const FactoredFunction& o) const;
    FactoredFunction inverse() const;
    FactoredFunction pow(long e) const;
    bool is_one() const { return factors.empty() && constant == NFElem(K, 1, 0); }

    // exponent of the monic atom q in this function
    long exponent_of(const Poly<NFElem>& q) const;
    // numerator/denominator expansion (for exact evaluation)
    std::pair<Poly<NFElem>, Poly<NFElem>> as_fraction() const;
    NFElem evaluate(const NFElem& t) const;

    std::string str() const;
};

struct CurveOnX {
    enum class Kind { horizontal, infinity_section, vertical };
    Kind kind = Kind::horizontal;
    Poly<NFElem> h;  // horizontal only: monic irreducible over K
    PrimeOfB b;      // vertical only

    static CurveOnX horizontal(const Poly<NFElem>& q);
    static CurveOnX infinity_section();
    static CurveOnX vertical(const PrimeOfB& b);

    bool operator==(const CurveOnX& o) const;
    bool operator<(const CurveOnX& o) const;
    std::string str() const;
};

struct ClosedPointOnX {
    PrimeOfB b;
    bool at_infinity = false;
    Poly<FqElem> minpoly;  // over k(b); unused when at_infinity
    int deg = 1;           // [k(x) : k(b)]

    bool operator==(const ClosedPointOnX& o) const;
    bool operator<(const ClosedPointOnX& o) const;
    std::string str() const;
};

class DivisorOnX {
  public:
    std::map<CurveOnX, long> coeff;

    void add(const CurveOnX& y, long n);
    DivisorOnX operator+(const DivisorOnX& o) const;
    DivisorOnX operator-(const DivisorOnX& o) const;
    DivisorOnX operator*(long n) const;
    bool operator==(const DivisorOnX& o) const { return coeff == o.coeff; }
    bool is_zero() const { return coeff.empty(); }
    long at(const CurveOnX& y) const;
    std::string str() const;
};

// order of vanishing along a curve of a factored function (the rank-one
// valuation v_y; Gauss valuation for vertical curves)
long curve_valuation(const CurveOnX& y, const FactoredFunction& u);

// full divisor of a factored function
DivisorOnX divisor_of_function(const FactoredFunction& u);

// b-content of a monic polynomial: min coefficient valuation (<= 0)
int content_at(const Poly<NFElem>& q, const PrimeOfB& b);

// A local equation of the prime divisor y at the closed point x: a factored
// function generating the ideal of y at x, with no other component of its
// divisor passing through x.
FactoredFunction local_equation(const CurveOnX& y, const ClosedPointOnX& x);

// irreducibility over K for degree <= 3 monic polynomials (root search);
// degree >= 4 is rejected as unsupported
bool is_irreducible_monic(const Poly<NFElem>& q);

// place valuation of a factored function along the curve carrying the place
int place_val_of_function(const PlaceAbove& pl, const FactoredFunction& u);

struct IntersectionPoint {
    ClosedPointOnX x;
    int i_x = 0;     // local intersection number at the place
    int weight = 1;  // residue weight [k(x~) : k(b)] of the place
    PlaceAbove place;  // populated for horizontal/horizontal and fiber cases
    bool has_place = false;
};

// local intersection data of two distinct prime divisors without common
// components; every listed point has i_x >= 1
std::vector<IntersectionPoint> intersection_points(const CurveOnX& D, const CurveOnX& E,
                                                   int prec = 64);

// [[D, E]] at divisor level on B
DivisorOnB deligne_divisor(const DivisorOnX& D, const DivisorOnX& E, int prec = 64);
DivisorOnB deligne_divisor(const CurveOnX& D, const CurveOnX& E, int prec = 64);

// pushforward of the principal divisor of f in k(D) for a horizontal D
DivisorOnB pushforward_principal(const CurveOnX& D, const Poly<NFElem>& f);

// primes of B at which two curves can meet (sound superset)
std::vector<PrimeOfB> meeting_primes(const CurveOnX& D, const CurveOnX& E);

// closed points of a curve over b, as surface points (derived from places)
std::vector<ClosedPointOnX> points_of_curve_over(const CurveOnX& y, const PrimeOfB& b,
                                                 int prec = 64);

// all closed points of the fiber over b of degree <= maxdeg, plus infinity
std::vector<ClosedPointOnX> fiber_points(const PrimeOfB& b, int maxdeg);

}  // namespace arithsurf
