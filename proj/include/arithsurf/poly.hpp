#pragma once

#include <array>
#include <utility>
#include <vector>

#include "arithsurf/errors.hpp"
#include "arithsurf/intutil.hpp"

namespace arithsurf {

inline bool coeff_is_zero(const Rat& x) { return x == 0; }
inline Rat coeff_inverse(const Rat& x) { return 1 / x; }
inline Rat coeff_one(const Rat&) { return 1; }

// Dense univariate polynomial over an exact coefficient type T.
// T needs +, -, *, coeff_is_zero(T); division paths also need
// coeff_inverse(T).  Coefficients are stored low degree first and kept
// trimmed, so deg() of the zero polynomial is -1.
template <class T>
class Poly {
  public:
    std::vector<T> c;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
    // v * x^k
    static Poly monomial(T v, int k) {
        std::vector<T> cs(k + 1);
        cs[k] = std::move(v);
        return Poly(std::move(cs));
    }

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const T& lc() const { return c.back(); }
    const T& operator[](int i) const { return c[i]; }
    T coeff(int i) const { return i >= 0 && i <= deg() ? c[i] : T(); }

    void trim() {
        while (!c.empty() && coeff_is_zero(c.back())) c.pop_back();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = T() - x;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.c.size() && i < b.c.size())
                r[i] = a.c[i] + b.c[i];
            else if (i < a.c.size())
                r[i] = a.c[i];
            else
                r[i] = b.c[i];
        }
        return Poly(std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c.size() + b.c.size() - 1);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) {
                T t = a.c[i] * b.c[j];
                r[i + j] = coeff_is_zero(r[i + j]) ? t : r[i + j] + t;
            }
        return Poly(std::move(r));
    }

    friend Poly operator*(const Poly& a, const T& s) {
        Poly r = a;
        for (auto& x : r.c) x = x * s;
        r.trim();
        return r;
    }

    bool operator==(const Poly& o) const {
        if (c.size() != o.c.size()) return false;
        for (size_t i = 0; i < c.size(); ++i)
            if (!coeff_is_zero(c[i] - o.c[i])) return false;
        return true;
    }

    T eval(const T& x) const {
        if (is_zero()) return T();
        T r = c.back();
        for (int i = deg() - 1; i >= 0; --i) r = r * x + c[i];
        return r;
    }

    Poly derivative() const {
        if (deg() <= 0) return Poly();
        std::vector<T> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) {
            T k = c[i];
            for (size_t j = 1; j < i; ++j) k = k + c[i];
            r[i - 1] = k;
        }
        Poly d;
        d.c = std::move(r);
        d.trim();
        return d;
    }

    // P(x + a); requires a nonzero coefficient to synthesize 1.
    Poly taylor_shift(const T& a) const {
        if (is_zero()) return Poly();
        T one = unit_like();
        Poly r;
        Poly lin(std::vector<T>{a, one});
        for (int i = deg(); i >= 0; --i) r = r * lin + Poly::constant(c[i]);
        return r;
    }

    // x^deg * P(1/x)
    Poly reversed() const {
        std::vector<T> r(c.rbegin(), c.rend());
        return Poly(std::move(r));
    }

    // The multiplicative identity of the coefficient ring, recovered from
    // the context carried by any nonzero coefficient.
    T unit_like() const {
        for (const auto& x : c)
            if (!coeff_is_zero(x)) return coeff_one(x);
        throw value_error("unit_like of zero polynomial");
    }
};

// Quotient and remainder by a monic divisor; works over any ring.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod_monic(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw value_error("division by zero polynomial");
    Poly<T> q, r = a;
    while (!r.is_zero() && r.deg() >= b.deg()) {
        T coef = r.lc();
        int k = r.deg() - b.deg();
        q = q + Poly<T>::monomial(coef, k);
        r = r - Poly<T>::monomial(coef, k) * b;
    }
    return {q, r};
}

// Quotient and remainder over a field (inverts the leading coefficient).
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw value_error("division by zero polynomial");
    T inv_lc = coeff_inverse(b.lc());
    Poly<T> q, r = a;
    while (!r.is_zero() && r.deg() >= b.deg()) {
        T coef = r.lc() * inv_lc;
        int k = r.deg() - b.deg();
        q = q + Poly<T>::monomial(coef, k);
        r = r - Poly<T>::monomial(coef, k) * b;
    }
    return {q, r};
}

template <class T>
Poly<T> make_monic(const Poly<T>& a) {
    if (a.is_zero()) return a;
    return a * coeff_inverse(a.lc());
}

// Monic gcd over a field.
template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return make_monic(a);
}

template <class T>
T one_from(const Poly<T>& a, const Poly<T>& b) {
    if (!a.is_zero()) return a.unit_like();
    if (!b.is_zero()) return b.unit_like();
    throw value_error("no unit available");
}

// Extended gcd over a field: returns (g, s, t) with s*a + t*b = g, g monic.
template <class T>
std::array<Poly<T>, 3> poly_xgcd(const Poly<T>& a, const Poly<T>& b) {
    T one = one_from(a, b);
    Poly<T> r0 = a, r1 = b;
    Poly<T> u0 = Poly<T>::constant(one), u1;
    Poly<T> v0, v1 = Poly<T>::constant(one);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly<T> u2 = u0 - q * u1, v2 = v0 - q * v1;
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    if (r0.is_zero()) throw value_error("xgcd of zero polynomials");
    T inv = coeff_inverse(r0.lc());
    return {r0 * inv, u0 * inv, v0 * inv};
}

template <class T>
T coeff_pow(T x, long e, const T& one) {
    T r = one;
    bool invert = e < 0;
    unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) r = r * x;
        x = x * x;
        n >>= 1;
    }
    if (invert) r = coeff_inverse(r);
    return r;
}

// Resultant over a field via the Euclidean remainder sequence.
template <class T>
T resultant(Poly<T> a, Poly<T> b) {
    if (a.is_zero() || b.is_zero()) return T();
    T one = one_from(a, b);
    T acc = one;
    bool negate = false;
    while (b.deg() > 0) {
        if (a.deg() < b.deg()) {
            if ((a.deg() * b.deg()) % 2 != 0) negate = !negate;
            std::swap(a, b);
            continue;
        }
        auto [q, r] = divmod(a, b);
        if (r.is_zero()) return T();  // common factor
        if ((a.deg() * b.deg()) % 2 != 0) negate = !negate;
        acc = acc * coeff_pow(b.lc(), a.deg() - r.deg(), one);
        a = b;
        b = r;
    }
    acc = acc * coeff_pow(b.lc(), a.deg(), one);
    return negate ? T() - acc : acc;
}

}  // namespace arithsurf
