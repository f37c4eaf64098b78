#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace arithsurf {

using Int = mpz_class;
using Rat = mpq_class;

// v_p(n) for n != 0.
int padic_val(const Int& n, const Int& p);
// v_p(q) for q != 0 (valuation of numerator minus denominator).
int padic_val(const Rat& q, const Int& p);

Int pow_int(const Int& base, unsigned long e);

// q mod p as a canonical residue in [0, p), requires p not dividing den(q).
Int mod_p(const Rat& q, const Int& p);

// Inverse of a mod m for gcd(a, m) = 1.
Int inv_mod(const Int& a, const Int& m);

bool is_prime(const Int& n);

// Prime factorization by trial division plus Pollard rho; desk scale.
std::map<Int, int> factor_integer(Int n);

// Floor of the integer square root, n >= 0.
Int isqrt(const Int& n);

// True iff n is a perfect square; if so *root is set.
bool perfect_square(const Int& n, Int* root);

// Square root of a modulo an odd prime p (Tonelli-Shanks); empty when a is
// a non-residue.
std::optional<Int> sqrt_mod(const Int& a, const Int& p);

}  // namespace arithsurf
