#pragma once

#include <utility>
#include <vector>

#include "motkit/errors.hpp"

namespace motkit {

// Dense row-major cost matrix; rows index predictions, columns index targets.
struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> costs;

  static CostMatrix zeros(int rows, int cols);

  double& at(int r, int c) { return costs[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const {
    return costs[static_cast<std::size_t>(r) * cols + c];
  }
};

// One-to-one partial matching; |pairs| = min(rows, cols), pairs sorted by row.
struct Assignment {
  std::vector<std::pair<int, int>> pairs;
  double total_cost = 0.0;
};

// Minimum-total-cost matching of size min(rows, cols). Among cost-optimal
// matchings, returns the lexicographically smallest pair list (lowest row
// index first, then lowest column index), so results are stable golden values.
// Throws NumericError on non-finite entries; an empty matrix yields an empty
// assignment.
Assignment solve_assignment(const CostMatrix& costs);

}  // namespace motkit
