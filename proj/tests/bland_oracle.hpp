#pragma once

#include <vector>

#include "lps/lp_model.hpp"

namespace lps::testing {

enum class OracleStatus { optimal, unbounded, infeasible, stalled };

struct OracleResult {
    OracleStatus status = OracleStatus::stalled;
    double objective = 0.0;
    std::vector<double> x;
};

/// Textbook two-phase full-tableau simplex with Bland's smallest-index rule
/// throughout. Deliberately independent of the production solver: different
/// representation (condensed tableau with an explicit reduced-cost row),
/// different pivot rule, plain row operations.
OracleResult bland_solve(const StandardFormLP& lp, long max_iter = 1000000);

}  // namespace lps::testing
