#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semcf/atom.hpp"
#include "semcf/dataset.hpp"

namespace semcf {

/// Directed graph over CN ∪ RN ∪ {TOP}: one edge per subsumption axiom,
/// plus an edge to TOP from every atom with no outgoing axiom. Node 0 is
/// always TOP; the undirected view is connected.
struct TBoxGraph {
  std::vector<std::string> names;  // index 0 = TOP, then sorted atoms
  std::vector<AtomKind> kinds;     // top / atomic_concept / role
  std::unordered_map<std::string, int> index;
  std::vector<std::pair<int, int>> edges;  // directed (sub, sup), sorted
  std::vector<std::vector<int>> adj;       // undirected adjacency, sorted

  static constexpr int kTop = 0;

  int node(const std::string& name) const;  // -1 when absent
  size_t size() const { return names.size(); }
};

TBoxGraph build_tbox_graph(const ExplanationDataset& ds);

}  // namespace semcf
