#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "semcf/abox_graph.hpp"
#include "semcf/cost_model.hpp"

namespace semcf {

struct GedBudget {
  int max_nodes = 10;
  std::chrono::milliseconds time_limit{0};  // 0 = unlimited
};

enum class GraphOpKind {
  node_substitute,
  node_delete,
  node_insert,
  edge_substitute,
  edge_delete,
  edge_insert,
};

/// One graph edit. Node ops use a_node/b_node; edge ops name both endpoints
/// on each side (empty strings where a side does not exist).
struct GraphEditOp {
  GraphOpKind kind;
  std::string a_node, a_node2;
  std::string b_node, b_node2;
  double cost = 0;
};

struct GedResult {
  double cost = 0;
  std::vector<GraphEditOp> ops;
  bool optimal = true;  // false when the time limit cut the search short
};

/// Exact graph edit distance between two components via depth-first
/// branch-and-bound over node mappings. Node substitution is priced by
/// label matching of concept sets, edge substitution by label matching of
/// role sets, deletions and insertions by TOP distances. Throws
/// Errc::budget_exceeded when either component is over the node budget.
GedResult exact_ged(const CostModel& cm, const ABoxComponent& a,
                    const ABoxComponent& b, const GedBudget& budget = {});

}  // namespace semcf
