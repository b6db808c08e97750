#pragma once

#include <utility>
#include <vector>

namespace semcf {

using CostMatrix = std::vector<std::vector<double>>;

/// A full matching of the smaller side of a rectangular cost matrix.
/// `pairs` is sorted by row index and is the lexicographically smallest
/// pair list among all minimum-weight matchings.
struct Matching {
  std::vector<std::pair<int, int>> pairs;
  double cost = 0;
};

/// Minimum-weight full matching of the smaller side. Infinite entries are
/// forbidden edges. Throws InfeasibleError (with the unmatched rows of the
/// smaller side) when no finite-cost full matching exists.
Matching min_weight_full_match(const CostMatrix& weights);

/// Cost-only variant without tie-break refinement; used where only the
/// optimum value matters (lower bounds, feasibility probes).
double min_match_cost(const CostMatrix& weights);

}  // namespace semcf
