#pragma once

#include <vector>

#include "mediatorless/rational.hpp"

namespace mediatorless {

// Small dense exact-rational LP: maximize c.x subject to the given rows,
// x >= 0. Two-phase simplex with Bland's rule, so it terminates and every
// comparison is exact.
enum class Relation { le, eq, ge };

struct LpConstraint {
    std::vector<Rat> a;
    Relation rel = Relation::le;
    Rat b;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rat objective;
    std::vector<Rat> x;
};

LpResult solve_lp(const std::vector<Rat>& objective, const std::vector<LpConstraint>& rows);

}  // namespace mediatorless
