#include "semcf/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semcf/errors.hpp"

namespace semcf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieEps = 1e-9;

struct SolveResult {
  double cost = 0;
  std::vector<int> failed_rows;
};

/// Shortest-augmenting-path assignment for rows <= cols. Infinite entries
/// are never relaxed, so a row with no reachable free column surfaces as an
/// infinite delta and is recorded as failed (duals stay feasible, later
/// rows continue).
SolveResult solve_rect(const CostMatrix& a) {
  int r = int(a.size());
  int c = int(a[0].size());
  std::vector<double> u(r + 1, 0), v(c + 1, 0);
  std::vector<int> match_col(c + 1, 0);  // 1-based; 0 = free
  SolveResult res;

  for (int i = 1; i <= r; ++i) {
    std::vector<double> minv(c + 1, kInf);
    std::vector<int> way(c + 1, 0);
    std::vector<char> used(c + 1, 0);
    int j0 = 0;
    match_col[0] = i;
    bool ok = true;
    do {
      used[j0] = 1;
      int i0 = match_col[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= c; ++j) {
        if (used[j]) continue;
        double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (delta == kInf) {
        ok = false;
        break;
      }
      for (int j = 0; j <= c; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);

    if (!ok) {
      res.failed_rows.push_back(i - 1);
      match_col[0] = 0;
      continue;
    }
    for (int j; j0 != 0; j0 = j) {
      j = way[j0];
      match_col[j0] = match_col[j];
    }
    match_col[0] = 0;
  }

  for (int j = 1; j <= c; ++j)
    if (match_col[j] > 0) res.cost += a[match_col[j] - 1][j - 1];
  return res;
}

CostMatrix transpose(const CostMatrix& a) {
  CostMatrix t(a[0].size(), std::vector<double>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

/// Optimal cost of completing the matching below `first_row`, or infinity
/// when impossible. When rows are the smaller side every remaining row must
/// be matched; otherwise every remaining column must be.
double completion_cost(const CostMatrix& w, int first_row,
                       const std::vector<char>& col_used, int skip_col,
                       bool rows_required) {
  int r = int(w.size());
  int c = int(w[0].size());
  std::vector<int> cols;
  for (int j = 0; j < c; ++j)
    if (!col_used[j] && j != skip_col) cols.push_back(j);
  int rows_left = r - first_row;

  CostMatrix sub;
  if (rows_required) {
    if (rows_left == 0) return 0;
    if (rows_left > int(cols.size())) return kInf;
    sub.assign(rows_left, std::vector<double>(cols.size()));
    for (int i = 0; i < rows_left; ++i)
      for (size_t j = 0; j < cols.size(); ++j)
        sub[i][j] = w[first_row + i][cols[j]];
  } else {
    if (cols.empty()) return 0;
    if (int(cols.size()) > rows_left) return kInf;
    sub.assign(cols.size(), std::vector<double>(rows_left));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < rows_left; ++i)
        sub[j][i] = w[first_row + i][cols[j]];
  }
  SolveResult s = solve_rect(sub);
  return s.failed_rows.empty() ? s.cost : kInf;
}

}  // namespace

double min_match_cost(const CostMatrix& weights) {
  if (weights.empty() || weights[0].empty())
    throw Error(Errc::validation, "cost matrix must be non-empty");
  bool transposed = weights.size() > weights[0].size();
  const CostMatrix a = transposed ? transpose(weights) : weights;
  SolveResult s = solve_rect(a);
  if (!s.failed_rows.empty()) {
    std::string side = transposed ? "columns" : "rows";
    throw InfeasibleError("no finite-cost full matching of the " + side,
                          s.failed_rows);
  }
  return s.cost;
}

Matching min_weight_full_match(const CostMatrix& weights) {
  if (weights.empty() || weights[0].empty())
    throw Error(Errc::validation, "cost matrix must be non-empty");
  for (const auto& row : weights)
    if (row.size() != weights[0].size())
      throw Error(Errc::validation, "cost matrix must be rectangular");

  Matching m;
  m.cost = min_match_cost(weights);

  // Row-major refinement: a pair on an earlier row always compares smaller,
  // so match each row to its smallest optimality-preserving column and skip
  // a row only when no column preserves the optimum (possible only while
  // rows outnumber columns).
  int r = int(weights.size());
  int c = int(weights[0].size());
  bool rows_required = r <= c;
  std::vector<char> col_used(c, 0);
  double tol = kTieEps * std::max(1.0, std::abs(m.cost));
  double fixed = 0;
  int pairs_needed = std::min(r, c);
  for (int i = 0; i < r && int(m.pairs.size()) < pairs_needed; ++i) {
    bool matched = false;
    for (int j = 0; j < c; ++j) {
      if (col_used[j] || weights[i][j] == kInf) continue;
      double rest = completion_cost(weights, i + 1, col_used, j,
                                    rows_required);
      if (rest == kInf) continue;
      if (std::abs(fixed + weights[i][j] + rest - m.cost) <= tol) {
        m.pairs.emplace_back(i, j);
        col_used[j] = 1;
        fixed += weights[i][j];
        matched = true;
        break;
      }
    }
    if (!matched && rows_required)
      throw Error(Errc::infeasible, "internal: refinement lost a row");
  }
  if (int(m.pairs.size()) != pairs_needed)
    throw Error(Errc::infeasible, "internal: refinement lost the optimum");
  return m;
}

}  // namespace semcf
