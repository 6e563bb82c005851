#pragma once

#include <cstdint>
#include <vector>

namespace kuramoto {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationCap };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

/// Dense two-phase tableau simplex with Bland's rule for
///   minimize c.x  subject to  A x = b,  x >= 0.
/// A is row-major, m rows by k columns. Deterministic; iteration cap 1e6.
/// Handles rank-deficient equality systems (redundant rows keep their
/// artificial variable basic at zero and it never re-enters).
LpResult simplex_solve(const std::vector<double>& a, int m, int k,
                       const std::vector<double>& b, const std::vector<double>& c,
                       std::int64_t iteration_cap = 1000000);

}  // namespace kuramoto
