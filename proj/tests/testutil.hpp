#pragma once

#include <random>

#include "arithsurf/numberfield.hpp"

namespace arithsurf::testing {

using Rng = std::mt19937_64;

inline long rand_int(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rat rand_rat(Rng& rng, long span = 20) {
    long num = rand_int(rng, -span, span);
    long den = rand_int(rng, 1, span);
    return Rat(num, den);
}

inline NFElem rand_elem(Rng& rng, const NumberField& K, long span = 20) {
    if (K.is_rational()) return NFElem(K, rand_rat(rng, span), 0);
    return NFElem(K, rand_rat(rng, span), rand_rat(rng, span));
}

inline NFElem rand_nonzero(Rng& rng, const NumberField& K, long span = 20) {
    for (;;) {
        NFElem x = rand_elem(rng, K, span);
        if (!x.is_zero()) return x;
    }
}

inline NFElem rand_integral(Rng& rng, const NumberField& K, long span = 12) {
    if (K.is_rational()) return NFElem(K, Rat(rand_int(rng, -span, span)), 0);
    return NFElem(K, Rat(rand_int(rng, -span, span)), Rat(rand_int(rng, -span, span)));
}

// random monic integral polynomial of exact degree d
inline Poly<NFElem> rand_monic(Rng& rng, const NumberField& K, int d, long span = 8) {
    std::vector<NFElem> c(d + 1);
    for (int i = 0; i < d; ++i) c[i] = rand_integral(rng, K, span);
    c[d] = NFElem(K, 1, 0);
    return Poly<NFElem>(std::move(c));
}

}  // namespace arithsurf::testing
