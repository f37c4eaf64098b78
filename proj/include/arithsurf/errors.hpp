#pragma once

#include <stdexcept>
#include <string>

namespace arithsurf {

// Base for all arithmetic failures raised by the library.
struct arith_error : std::runtime_error {
    explicit arith_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid mathematical input: valuation of zero, non-unit argument,
// divisors with common components, malformed elements.
struct value_error : arith_error {
    explicit value_error(const std::string& what) : arith_error(what) {}
};

// Input shapes we deliberately do not handle: branched flags, degree
// bounds, real quadratic class groups, uncertifiable local factors.
struct unsupported_error : arith_error {
    explicit unsupported_error(const std::string& what) : arith_error(what) {}
};

// Working p-adic precision is not enough to decide the result.  Callers
// are expected to retry at doubled precision (see retry_with_precision).
struct precision_error : arith_error {
    explicit precision_error(const std::string& what) : arith_error(what) {}
};

// Retry `fn(prec)` with doubled precision on precision_error, up to a cap.
template <class Fn>
auto retry_with_precision(Fn&& fn, int start = 64, int cap = 1024) {
    int prec = start;
    for (;;) {
        try {
            return fn(prec);
        } catch (const precision_error&) {
            prec *= 2;
            if (prec > cap) throw;
        }
    }
}

}  // namespace arithsurf
