#include "motkit/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace motkit {

CostMatrix CostMatrix::zeros(int rows, int cols) {
  CostMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.costs.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  return m;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-augmenting-path solver (Jonker-Volgenant flavour) on an n x n
// matrix. Fills col_owner (column -> row, 0-based) and the dual potentials.
void jv_square(const std::vector<double>& c, int n, std::vector<int>& col_owner,
               std::vector<double>& u, std::vector<double>& v) {
  u.assign(n + 1, 0.0);
  v.assign(n + 1, 0.0);
  std::vector<int> p(n + 1, 0);
  std::vector<int> way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      const double* row = c.data() + static_cast<std::size_t>(i0 - 1) * n;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  col_owner.assign(n, -1);
  for (int j = 1; j <= n; ++j) {
    col_owner[j - 1] = p[j] - 1;
  }
}

// Canonicalizes an optimal matching to the lexicographically smallest one.
// Complementary slackness confines every optimal matching to the zero
// reduced-cost edges, so the matching is re-routed greedily, row by row,
// along alternating paths within that graph.
class LexCanonicalizer {
 public:
  LexCanonicalizer(const std::vector<double>& c, int n, int real_rows, int real_cols,
                   std::vector<int> col_owner, const std::vector<double>& u,
                   const std::vector<double>& v, double eps)
      : c_(c), n_(n), real_cols_(real_cols), col_owner_(std::move(col_owner)), eps_(eps) {
    row_to_col_.assign(n, -1);
    for (int j = 0; j < n; ++j) {
      row_to_col_[col_owner_[j]] = j;
    }
    u_.assign(n, 0.0);
    v_.assign(n, 0.0);
    for (int i = 0; i < n; ++i) u_[i] = u[i + 1];
    for (int j = 0; j < n; ++j) v_[j] = v[j + 1];
    fixed_row_.assign(n, 0);
    fixed_col_.assign(n, 0);
    for (int i = 0; i < real_rows; ++i) {
      refine_row(i);
      fixed_row_[i] = 1;
      fixed_col_[row_to_col_[i]] = 1;
    }
  }

  const std::vector<int>& row_to_col() const { return row_to_col_; }

 private:
  bool zero_edge(int i, int j) const {
    return c_[static_cast<std::size_t>(i) * n_ + j] - u_[i] - v_[j] <= eps_;
  }

  // Columns from which row i's current column is reachable by shifting the
  // owning rows along zero edges; parent_* record the shift to replay.
  void reverse_reachability(int i, std::vector<char>& visited) {
    const int target = row_to_col_[i];
    visited.assign(n_, 0);
    parent_row_.assign(n_, -1);
    parent_col_.assign(n_, -1);
    visited[target] = 1;
    queue_.clear();
    queue_.push_back(target);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const int x = queue_[qi];
      for (int r = 0; r < n_; ++r) {
        if (fixed_row_[r] || r == i || !zero_edge(r, x)) continue;
        const int y = row_to_col_[r];
        if (visited[y]) continue;
        visited[y] = 1;
        parent_row_[y] = r;
        parent_col_[y] = x;
        queue_.push_back(y);
      }
    }
  }

  void apply_shift(int i, int j) {
    int y = j;
    const int target = row_to_col_[i];
    while (y != target) {
      const int r = parent_row_[y];
      const int x = parent_col_[y];
      row_to_col_[r] = x;
      col_owner_[x] = r;
      y = x;
    }
    row_to_col_[i] = j;
    col_owner_[j] = i;
  }

  void refine_row(int i) {
    const int current = row_to_col_[i];
    // Candidate columns better than the current one, in lexicographic order:
    // all real columns strictly smaller, or any real column when the current
    // match is a padding column.
    const int limit = current < real_cols_ ? current : real_cols_;
    bool have_reach = false;
    std::vector<char> visited;
    for (int j = 0; j < limit; ++j) {
      if (fixed_col_[j] || !zero_edge(i, j)) continue;
      if (!have_reach) {
        reverse_reachability(i, visited);
        have_reach = true;
      }
      if (visited[j]) {
        apply_shift(i, j);
        return;
      }
    }
  }

  const std::vector<double>& c_;
  int n_;
  int real_cols_;
  std::vector<int> col_owner_;
  std::vector<int> row_to_col_;
  std::vector<double> u_, v_;
  double eps_ = 0.0;
  std::vector<char> fixed_row_, fixed_col_;
  std::vector<int> parent_row_, parent_col_;
  std::vector<int> queue_;
};

}  // namespace

Assignment solve_assignment(const CostMatrix& m) {
  if (m.costs.size() != static_cast<std::size_t>(m.rows) * m.cols || m.rows < 0 ||
      m.cols < 0) {
    throw ConsistencyError("cost matrix shape mismatch");
  }
  double scale = 1.0;
  for (const double c : m.costs) {
    if (!std::isfinite(c)) {
      throw NumericError("non-finite cost entry");
    }
    scale = std::max(scale, std::abs(c));
  }

  Assignment result;
  if (m.rows == 0 || m.cols == 0) {
    return result;
  }

  const int n = std::max(m.rows, m.cols);
  std::vector<double> padded(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      padded[static_cast<std::size_t>(i) * n + j] = m.at(i, j);
    }
  }

  std::vector<int> col_owner;
  std::vector<double> u, v;
  jv_square(padded, n, col_owner, u, v);

  const double eps = 1e-9 * scale;
  LexCanonicalizer canon(padded, n, m.rows, m.cols, std::move(col_owner), u, v, eps);

  for (int i = 0; i < m.rows; ++i) {
    const int j = canon.row_to_col()[i];
    if (j < m.cols) {
      result.pairs.emplace_back(i, j);
      result.total_cost += m.at(i, j);
    }
  }
  return result;
}

}  // namespace motkit
