#pragma once

#include "sonc/rational.hpp"

#include <optional>
#include <vector>

namespace sonc {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

int rat_rank(RatMat a);

/// Solves A x = b exactly for a consistent system with full column rank.
/// Returns nullopt if the system is inconsistent; throws DegenerateSimplex
/// via callers when columns are dependent (reported through `unique`).
struct LinearSolve {
  bool consistent = false;
  bool unique = false;
  RatVec solution;  // valid when consistent && unique
};
LinearSolve rat_solve(RatMat a, RatVec b);

/// Phase-1 simplex (Bland's rule): does {x >= 0 : A x = b} contain a point?
/// Exact rational arithmetic; terminates on all inputs.
bool lp_feasible_eq(RatMat a, RatVec b);

}  // namespace sonc
