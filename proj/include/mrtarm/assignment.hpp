#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrtarm {

/// Square matrix of nonnegative finite costs, row-major.
class CostMatrix {
public:
  CostMatrix() = default;
  explicit CostMatrix(std::size_t k, double fill = 0.0) : k_(k), entries_(k * k, fill) {}

  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    CostMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("cost matrix must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t size() const { return k_; }
  bool empty() const { return k_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * k_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * k_ + j]; }

  void validate() const {
    for (double v : entries_) {
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("cost entries must be finite and nonnegative");
      }
    }
  }

private:
  std::size_t k_ = 0;
  std::vector<double> entries_;
};

struct Assignment {
  std::vector<std::size_t> match;  // row -> column
  double total_cost = 0.0;
};

inline double assignment_cost(const CostMatrix& cm, const std::vector<std::size_t>& match) {
  double s = 0.0;
  for (std::size_t i = 0; i < match.size(); ++i) s += cm(i, match[i]);
  return s;
}

/// Minimum-cost perfect matching via shortest augmenting paths with dual
/// potentials, O(K^3). Ties resolve toward the lowest column index.
inline Assignment hungarian_solve(const CostMatrix& cm) {
  cm.validate();
  const std::size_t n = cm.size();
  Assignment out;
  if (n == 0) return out;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based internals; column 0 is the virtual root of each augmentation.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cm(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  out.match.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) out.match[owner[j] - 1] = j - 1;
  out.total_cost = assignment_cost(cm, out.match);
  return out;
}

/// Repeatedly commits the globally cheapest remaining (row, column) pair;
/// ties go to the lower row, then the lower column.
inline Assignment greedy_solve(const CostMatrix& cm) {
  cm.validate();
  const std::size_t n = cm.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<char> row_done(n, 0), col_done(n, 0);
  std::vector<std::size_t> best_col(n, kNone);

  auto refresh = [&](std::size_t i) {
    std::size_t best = kNone;
    for (std::size_t j = 0; j < n; ++j) {
      if (col_done[j]) continue;
      if (best == kNone || cm(i, j) < cm(i, best)) best = j;
    }
    best_col[i] = best;
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  Assignment out;
  out.match.assign(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = kNone;
    for (std::size_t i = 0; i < n; ++i) {
      if (row_done[i]) continue;
      if (pick == kNone) {
        pick = i;
        continue;
      }
      const double a = cm(i, best_col[i]);
      const double b = cm(pick, best_col[pick]);
      if (a < b) pick = i;
    }
    const std::size_t col = best_col[pick];
    out.match[pick] = col;
    row_done[pick] = 1;
    col_done[col] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!row_done[i] && best_col[i] == col) refresh(i);
    }
  }
  out.total_cost = assignment_cost(cm, out.match);
  return out;
}

}  // namespace mrtarm
