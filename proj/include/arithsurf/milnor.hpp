#pragma once

#include "arithsurf/padic.hpp"

namespace arithsurf {

// The Steinberg relation a + b = 1 that kills a K_2 symbol {a, b}.
inline bool steinberg_check(const NFElem& a, const NFElem& b) {
    if (a.is_zero() || b.is_zero()) return false;
    return (a + b) == NFElem(a.field, 1, 0);
}

// Tame symbol (a,b) = (-1)^{v(a)v(b)} * red(a^{v(b)} b^{-v(a)}) for the
// b-adic valuation on K, exact.
FqElem tame_symbol(const NFElem& a, const NFElem& b, const PrimeOfB& p, const FqCtxPtr& k);

// Rational function field F_q(t): elements as num/den pairs.
struct FqRational {
    Poly<FqElem> num, den;
};

// order of vanishing of f at the irreducible m
int ord_at(const FqRational& f, const Poly<FqElem>& m);

// Tame symbol at the place (m) of F_q(t); the value lives in the residue
// field kext = F_q[t]/(m).
FqElem tame_symbol_fq(const FqRational& a, const FqRational& b, const Poly<FqElem>& m,
                      const FqCtxPtr& kext);

// reduce a polynomial class mod m into the quotient-field context
FqElem poly_class_in_ext(const Poly<FqElem>& r, const Poly<FqElem>& m, const FqCtxPtr& kext);

// ---------------------------------------------------------------------------
// Kato residue on L = Frac(O_F[[t]]), F the fraction field of the ring R
// (a completion K_b or an unramified extension of it).

enum class AtomCert {
    degree1,
    eisenstein,
    unramified_residue,
    squarefree_weierstrass  // distinguished part of a squarefree polynomial
};

struct SymbolAtom {
    Poly<LocalElem> poly;  // monic distinguished, squarefree
    AtomCert cert = AtomCert::squarefree_weierstrass;
};

// Element of L^x in factored form: constant * prod atoms[i]^exp[i] * prod
// tails, with every tail a polynomial with unit constant term (a unit of
// O_F[[t]]).  The constant carries the pi-power.
struct FactoredLocalElement {
    LocalRingPtr R;
    LocalNum constant;  // pi^m * unit
    std::vector<std::pair<SymbolAtom, long>> atoms;
    std::vector<std::pair<Poly<LocalElem>, long>> tails;

    static FactoredLocalElement one(const LocalRingPtr& R);
    FactoredLocalElement times_atom(const SymbolAtom& a, long e) const;
    FactoredLocalElement times_tail(const Poly<LocalElem>& t, long e) const;
    FactoredLocalElement times_const(const LocalNum& c) const;
    // multiply two factored elements (atom lists are concatenated; equal
    // atoms merged)
    FactoredLocalElement operator*(const FactoredLocalElement& o) const;
};

// res^{(2)}{f, g}: the second Kato residue map evaluated on the factored
// pair, a finite product over the distinguished primes dividing f or g of
// normed tame symbols.
LocalNum kato_residue(const FactoredLocalElement& f, const FactoredLocalElement& g);

// The boundary map used by the pairing: the inverse of kato_residue (the
// minus sign of the K-group becomes inversion in the multiplicative target).
LocalNum boundary_map(const FactoredLocalElement& f, const FactoredLocalElement& g);

}  // namespace arithsurf
