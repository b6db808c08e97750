#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semcf/atom.hpp"
#include "semcf/dataset.hpp"

namespace semcf {

/// Labeled-graph encoding of the ABox: one node per individual, node labels
/// are asserted concepts (exemplar nodes carry Exemplar), directed edges
/// carry the set of asserted roles between their endpoints.
struct ABoxGraph {
  std::vector<std::string> nodes;  // sorted individuals
  std::unordered_map<std::string, int> index;
  std::vector<std::set<std::string>> labels;
  std::map<std::pair<int, int>, std::set<std::string>> edges;
  std::vector<std::vector<int>> undirected_adj;

  int node(const std::string& name) const;  // -1 when absent
};

ABoxGraph build_abox_graph(const ExplanationDataset& ds);

/// The sub-graph reachable from one exemplar ignoring edge direction.
struct ABoxComponent {
  std::string exemplar;
  std::vector<std::string> nodes;  // sorted
  std::map<std::string, std::set<std::string>> labels;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> edges;
};

/// Throws Errc::unknown_exemplar when `exemplar` is not a node of `g`.
ABoxComponent exemplar_component(const ABoxGraph& g,
                                 const std::string& exemplar);

/// A node's concept labels as atoms (empty set when the node is unknown).
std::set<Atom> concept_label_atoms(const ABoxComponent& comp,
                                   const std::string& node);
/// A directed edge's role labels as atoms.
std::set<Atom> role_label_atoms(const ABoxComponent& comp,
                                const std::string& subject,
                                const std::string& object);

}  // namespace semcf
