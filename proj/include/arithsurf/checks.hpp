#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arithsurf/numberfield.hpp"

namespace arithsurf {

struct CheckResult {
    std::string kind;
    int cases = 0;
    int failures = 0;
    std::vector<std::string> notes;

    bool pass() const { return failures == 0 && cases > 0; }
    void fail(const std::string& what) {
        ++failures;
        if (notes.size() < 12) notes.push_back(what);
    }
};

// Deterministic property-check runners; each runs `cases` seeded cases at
// the given starting precision.
CheckResult check_symbol_laws(uint64_t seed, int cases, int prec);
CheckResult check_boundary_characterization(uint64_t seed, int cases, int prec);
CheckResult check_vertical_reciprocity(uint64_t seed, int cases, int prec);
CheckResult check_point_reciprocity(uint64_t seed, int cases, int prec);
CheckResult check_descent(uint64_t seed, int cases, int prec);
CheckResult check_resultant_oracle(uint64_t seed, int cases, int prec);
CheckResult check_lift_independence(uint64_t seed, int cases, int prec);
CheckResult check_boundary_vanishing(uint64_t seed, int cases, int prec);
CheckResult check_detcoh_consistency(uint64_t seed, int cases, int prec);
CheckResult check_series_laws(uint64_t seed, int cases, int prec);
CheckResult check_winding_symbol_identity(uint64_t seed, int cases, int prec);
CheckResult check_precision_robustness(uint64_t seed, int cases, int prec);

// registry for the CLI
std::vector<std::string> check_kinds();
CheckResult run_check(const std::string& kind, uint64_t seed, int cases, int prec);

}  // namespace arithsurf
