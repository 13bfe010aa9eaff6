#include <doctest.h>

#include <cmath>
#include <set>

#include "motkit/assign.hpp"
#include "motkit/rng.hpp"
#include "oracles.hpp"

using namespace motkit;

namespace {

CostMatrix matrix(int rows, int cols, std::initializer_list<double> values) {
  CostMatrix m = CostMatrix::zeros(rows, cols);
  std::copy(values.begin(), values.end(), m.costs.begin());
  return m;
}

}  // namespace

TEST_CASE("hand-checked assignments") {
  SUBCASE("diagonal wins") {
    const Assignment a = solve_assignment(matrix(2, 2, {1, 2, 2, 1}));
    CHECK(a.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
    CHECK(a.total_cost == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("anti-diagonal wins") {
    const Assignment a = solve_assignment(matrix(2, 2, {4, 1, 2, 3}));
    CHECK(a.pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
    CHECK(a.total_cost == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("single entry") {
    const Assignment a = solve_assignment(matrix(1, 1, {7}));
    CHECK(a.pairs == std::vector<std::pair<int, int>>{{0, 0}});
    CHECK(a.total_cost == 7.0);
  }
  SUBCASE("all ties pick the lexicographically smallest pairs") {
    const Assignment a = solve_assignment(matrix(2, 2, {5, 5, 5, 5}));
    CHECK(a.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  }
}

TEST_CASE("empty and invalid matrices") {
  CHECK(solve_assignment(CostMatrix::zeros(0, 5)).pairs.empty());
  CHECK(solve_assignment(CostMatrix::zeros(3, 0)).pairs.empty());
  CHECK(solve_assignment(CostMatrix::zeros(0, 0)).total_cost == 0.0);
  CostMatrix bad = CostMatrix::zeros(2, 2);
  bad.costs[2] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(solve_assignment(bad), NumericError);
  bad.costs[2] = std::nan("");
  CHECK_THROWS_AS(solve_assignment(bad), NumericError);
}

TEST_CASE("matches exhaustive search on random matrices") {
  Rng rng(123);
  for (int trial = 0; trial < 1200; ++trial) {
    const int rows = 1 + static_cast<int>(rng.uniform_int(7));
    const int cols = 1 + static_cast<int>(rng.uniform_int(7));
    CostMatrix m = CostMatrix::zeros(rows, cols);
    const bool tie_heavy = trial % 3 == 0;
    for (double& c : m.costs) {
      // Tie-heavy integer matrices stress the lexicographic canonicalization.
      c = tie_heavy ? static_cast<double>(rng.uniform_int(3))
                    : rng.uniform(-10.0, 10.0);
    }
    const Assignment got = solve_assignment(m);
    const Assignment want = testing::brute_force_assignment(m);
    CHECK(got.pairs == want.pairs);
    CHECK(got.total_cost == doctest::Approx(want.total_cost).epsilon(1e-9));
    CHECK(got.pairs.size() == static_cast<std::size_t>(std::min(rows, cols)));
  }
}

TEST_CASE("total cost equals the sum of matched entries") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(rng.uniform_int(10));
    const int cols = 1 + static_cast<int>(rng.uniform_int(10));
    CostMatrix m = CostMatrix::zeros(rows, cols);
    for (double& c : m.costs) c = rng.uniform(-5.0, 5.0);
    const Assignment a = solve_assignment(m);
    double total = 0.0;
    std::set<int> seen_rows, seen_cols;
    for (const auto& [r, c] : a.pairs) {
      total += m.at(r, c);
      CHECK(seen_rows.insert(r).second);
      CHECK(seen_cols.insert(c).second);
    }
    CHECK(std::abs(total - a.total_cost) <= 1e-9);
  }
}

TEST_CASE("adding a constant to a square matrix keeps the pairing") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(5));
    CostMatrix m = CostMatrix::zeros(n, n);
    for (double& c : m.costs) c = rng.uniform(0.0, 10.0);
    const double shift = rng.uniform(-3.0, 3.0);
    CostMatrix shifted = m;
    for (double& c : shifted.costs) c += shift;
    const Assignment base = solve_assignment(m);
    const Assignment moved = solve_assignment(shifted);
    CHECK(base.pairs == moved.pairs);
    CHECK(moved.total_cost ==
          doctest::Approx(base.total_cost + n * shift).epsilon(1e-9));
  }
}
