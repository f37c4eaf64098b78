#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arithsurf/finitefield.hpp"
#include "arithsurf/poly.hpp"

namespace arithsurf {

// K = Q or a quadratic field Q(sqrt(d)), d squarefree, d != 0, 1.
// Integers are Z[omega] with omega = (1+sqrt d)/2 when d = 1 mod 4 and
// omega = sqrt d otherwise.
struct NumberField {
    enum class Kind { rational, quadratic };
    Kind kind = Kind::rational;
    long d = 0;

    static NumberField Q() { return {}; }
    static NumberField quadratic(long d);

    int degree() const { return kind == Kind::rational ? 1 : 2; }
    bool is_rational() const { return kind == Kind::rational; }
    bool imaginary() const { return kind == Kind::quadratic && d < 0; }
    bool omega_half() const;  // omega = (1+sqrt d)/2
    Int discriminant() const;
    // minimal polynomial of omega over Q: x^2 - x + (1-d)/4 or x^2 - d
    void omega_minpoly(Int& lin, Int& con) const;  // x^2 + lin*x + con

    bool operator==(const NumberField& o) const = default;
};

// Element a + b*omega of K, exact.
class NFElem {
  public:
    NumberField field;
    Rat a, b;

    NFElem() = default;
    NFElem(NumberField f, Rat a_, Rat b_) : field(f), a(std::move(a_)), b(std::move(b_)) {
        a.canonicalize();
        b.canonicalize();
        if (field.is_rational() && b != 0) throw value_error("rational element with omega part");
    }
    NFElem(long v) : a(v) {}                    // NOLINT: implicit by design
    NFElem(Rat v) : a(std::move(v)) {}          // NOLINT

    static NFElem omega(NumberField f) { return NFElem(f, 0, 1); }
    static NFElem sqrt_d(NumberField f);  // sqrt(d) itself

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational_value() const { return b == 0; }
    bool is_integral() const;  // lies in Z[omega]

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator*(const NFElem& o) const;
    NFElem operator/(const NFElem& o) const;
    NFElem operator-() const { return NFElem(field, -a, -b); }
    bool operator==(const NFElem& o) const;

    NFElem conj() const;
    Rat norm() const;   // N_{K/Q}
    Rat trace() const;
    NFElem inverse() const;
    NFElem pow(long e) const;

    std::string str() const;   // "a/b + c/d*sqrt(D)" form
    static NFElem parse(const std::string& s, const NumberField& f);
};

inline bool coeff_is_zero(const NFElem& x) { return x.is_zero(); }
inline NFElem coeff_inverse(const NFElem& x) { return x.inverse(); }
inline NFElem coeff_one(const NFElem& x) { return NFElem(x.field, 1, 0); }

// A maximal ideal of O_K, with enough attached data to evaluate exact
// valuations and residue maps.
struct PrimeOfB {
    NumberField field;
    Int p;
    enum class Split { rational, split, inert, ramified };
    Split split = Split::rational;
    int e = 1;
    int f = 1;
    // two-element representation (p, second_gen); second_gen has valuation
    // exactly 1 here (and 0 at the conjugate prime when split).
    NFElem second_gen;
    // split only: omega = root (mod p), normalized so v_p(m(root)) == 1
    Int root = 0;
    // helper element h with h * prime contained in (p), h not in (p);
    // used for the exact valuation loop.
    NFElem helper;

    Int norm() const { return pow_int(p, f); }
    // an element of valuation 1 at this prime (the local uniformizer in K)
    const NFElem& uniformizer() const { return second_gen; }
    std::string str() const;

    bool operator==(const PrimeOfB& o) const;
    bool operator<(const PrimeOfB& o) const;
};

std::vector<PrimeOfB> factor_prime(const Int& p, const NumberField& K);
// The prime of Q(sqrt d) above p singled out by a tag: for split primes,
// tag 0/1 picks the root order; ignored otherwise.
PrimeOfB prime_above(const Int& p, const NumberField& K, int tag = 0);

int valuation_at(const NFElem& x, const PrimeOfB& b);

FqCtxPtr residue_field(const PrimeOfB& b);
FqElem residue_at(const NFElem& x, const PrimeOfB& b);
FqElem residue_at(const NFElem& x, const PrimeOfB& b, const FqCtxPtr& k);

// spec-level named type: a residue together with its prime
struct ResidueElement {
    PrimeOfB b;
    FqElem value;
};

// Res(h, g) = N_{L[t]/(h) | L}(g mod h) for monic h; errors if gcd(h, g)
// is nontrivial.
NFElem norm_resultant(const Poly<NFElem>& h, const Poly<NFElem>& g);

// Formal Z-linear combination of primes of B = Spec O_K; also serves as a
// fractional ideal of O_K (exponent vector).
class DivisorOnB {
  public:
    std::map<PrimeOfB, long> coeff;

    bool is_zero() const { return coeff.empty(); }
    void add(const PrimeOfB& b, long n);
    DivisorOnB operator+(const DivisorOnB& o) const;
    DivisorOnB operator-(const DivisorOnB& o) const;
    DivisorOnB operator*(long n) const;
    bool operator==(const DivisorOnB& o) const { return coeff == o.coeff; }
    long at(const PrimeOfB& b) const;
    // join = componentwise max (intersection of fractional ideals)
    DivisorOnB meet_max(const DivisorOnB& o) const;
    Rat norm() const;  // product of N(p)^n
    std::string str() const;
};

// div_B(x) for x in K^*.
DivisorOnB principal_divisor(const NFElem& x);

// Divisor class with an explicit principality certificate.
struct ClassOnB {
    DivisorOnB representative;
    bool principal = false;
    std::optional<NFElem> generator;   // set when principal
    Int search_bound = 0;              // exhausted bound when not principal
    std::string str() const;
};

// Integral elements with |N(alpha)| = M, both signs (imaginary quadratic
// and Q only; exhaustive since the norm form is definite).
std::vector<NFElem> integral_elements_of_norm(const Int& M, const NumberField& K);

// Decides principality of D by exhaustive search for a generator of the
// corresponding fractional ideal (imaginary quadratic and Q only).
ClassOnB divisor_class_reduce(const DivisorOnB& D, const NumberField& K);

// Same class test: D - E principal.
bool same_class(const DivisorOnB& D, const DivisorOnB& E, const NumberField& K);

}  // namespace arithsurf
