#pragma once

#include <string>

#include "arithsurf/surface.hpp"

namespace arithsurf {

// "Q", "Q(i)", "Q(sqrt -5)", "Q(sqrt 2)"
NumberField parse_field(const std::string& s);
std::string field_str(const NumberField& K);

// polynomial in t with coefficients in K: "t^2+1", "t^3 - (1/2)*t + sqrt(-5)"
Poly<NFElem> parse_poly(const std::string& s, const NumberField& K);
std::string poly_to_string(const Poly<NFElem>& q);

// "(5)" or "(5,0)" / "(5,1)" to pick a split prime by tag
PrimeOfB parse_prime(const std::string& s, const NumberField& K);

// "poly:t^2+1" | "infinity" | "fiber:(5)"
CurveOnX parse_curve(const std::string& s, const NumberField& K);

// factored function literal: "(t^2+1)^2 * (t-1)^-1 * 3/2"
FactoredFunction parse_function(const std::string& s, const NumberField& K);

}  // namespace arithsurf
