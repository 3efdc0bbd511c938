#include "wpid/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace wpid {

WeightTable WeightTable::from_scores(const std::map<std::pair<TraceId, SensorId>, double>& scores) {
  std::set<TraceId> rows;
  std::set<SensorId> cols;
  for (const auto& [key, w] : scores) {
    rows.insert(key.first);
    cols.insert(key.second);
  }
  WeightTable table;
  table.rows.assign(rows.begin(), rows.end());
  table.cols.assign(cols.begin(), cols.end());
  table.weights.assign(table.rows.size(), std::vector<double>(table.cols.size(), 0.0));
  for (const auto& [key, w] : scores) {
    const auto r = std::lower_bound(table.rows.begin(), table.rows.end(), key.first) - table.rows.begin();
    const auto c = std::lower_bound(table.cols.begin(), table.cols.end(), key.second) - table.cols.begin();
    table.weights[r][c] = w;
  }
  return table;
}

double max_matching_value(const std::vector<std::vector<double>>& weights) {
  const std::size_t rows = weights.size();
  const std::size_t cols = rows ? weights.front().size() : 0;
  const std::size_t n = std::max(rows, cols);
  if (n == 0) return 0.0;
  auto cost = [&](std::size_t i, std::size_t j) {
    return (i < rows && j < cols) ? -weights[i][j] : 0.0;
  };

  // Shortest augmenting path with potentials, 1-based with a virtual column 0.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
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
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = p[j];
    if (i >= 1 && i - 1 < rows && j - 1 < cols) total += weights[i - 1][j - 1];
  }
  return total;
}

namespace {

// Optimum over rows [from, end) restricted to the columns still free.
double residual_value(const std::vector<std::vector<double>>& w, std::size_t from,
                      const std::vector<bool>& col_free) {
  std::vector<std::vector<double>> sub;
  for (std::size_t r = from; r < w.size(); ++r) {
    std::vector<double> row;
    for (std::size_t c = 0; c < col_free.size(); ++c)
      if (col_free[c]) row.push_back(w[r][c]);
    sub.push_back(std::move(row));
  }
  if (sub.empty() || sub.front().empty()) return 0.0;
  return max_matching_value(sub);
}

}  // namespace

Assignment solve_lsap(const WeightTable& table) {
  // Sort rows and columns by id so that greedy fixing yields the
  // lexicographically smallest optimum.
  std::vector<std::size_t> row_order(table.rows.size()), col_order(table.cols.size());
  for (std::size_t k = 0; k < row_order.size(); ++k) row_order[k] = k;
  for (std::size_t k = 0; k < col_order.size(); ++k) col_order[k] = k;
  std::sort(row_order.begin(), row_order.end(),
            [&](std::size_t a, std::size_t b) { return table.rows[a] < table.rows[b]; });
  std::sort(col_order.begin(), col_order.end(),
            [&](std::size_t a, std::size_t b) { return table.cols[a] < table.cols[b]; });

  std::vector<std::vector<double>> w(row_order.size(), std::vector<double>(col_order.size(), 0.0));
  for (std::size_t r = 0; r < row_order.size(); ++r)
    for (std::size_t c = 0; c < col_order.size(); ++c) {
      const double x = table.weights[row_order[r]][col_order[c]];
      if (!std::isfinite(x) || x < 0.0) throw ConfigError("assignment weights must be finite and non-negative");
      w[r][c] = x;
    }

  Assignment out;
  std::vector<bool> col_free(col_order.size(), true);
  const double best = residual_value(w, 0, col_free);
  const double tol = 1e-9 * std::max(1.0, best);
  double fixed = 0.0;
  for (std::size_t r = 0; r < w.size(); ++r) {
    for (std::size_t c = 0; c < col_order.size(); ++c) {
      if (!col_free[c] || !(w[r][c] > 0.0)) continue;
      col_free[c] = false;
      if (fixed + w[r][c] + residual_value(w, r + 1, col_free) >= best - tol) {
        fixed += w[r][c];
        out.pairs.emplace_back(table.rows[row_order[r]], table.cols[col_order[c]]);
        break;
      }
      col_free[c] = true;
    }
  }
  out.objective = fixed;
  return out;
}

Assignment raw_pair(const SimilarityMatrix& sim) { return solve_lsap(WeightTable::from_scores(sim.scores)); }

RefinedState update_rsim(RefinedState state, const Assignment& p) {
  for (const auto& pair : p.pairs) ++state.counts[pair];
  ++state.frames_processed;
  return state;
}

Assignment refined_pair(const RefinedState& state, const std::vector<TraceId>* rows) {
  std::map<std::pair<TraceId, SensorId>, double> weights;
  for (const auto& [key, count] : state.counts) {
    if (count <= 0) continue;
    if (rows && !std::binary_search(rows->begin(), rows->end(), key.first)) continue;
    weights[key] = std::log2(1.0 + static_cast<double>(count));
  }
  return solve_lsap(WeightTable::from_scores(weights));
}

std::size_t pair_changes(const Assignment& before, const Assignment& after) {
  std::map<TraceId, SensorId> prev;
  for (const auto& [t, s] : before.pairs) prev[t] = s;
  std::size_t changes = 0;
  for (const auto& [t, s] : after.pairs) {
    auto it = prev.find(t);
    if (it != prev.end() && it->second != s) ++changes;
  }
  return changes;
}

}  // namespace wpid
