#pragma once

#include <set>
#include <string>
#include <vector>

#include "semcf/abox_graph.hpp"
#include "semcf/atom.hpp"

namespace semcf {

struct RollupOptions {
  /// When a role assertion's object has no concept label, emit exists:r:TOP
  /// instead of dropping the edge. Off by default.
  bool unlabeled_filler_as_top = false;
};

/// The concepts attached to one non-exemplar node of a component: its
/// asserted concepts plus one existential per outgoing (role, filler
/// concept) pair.
struct LabelSet {
  std::string origin;  // the originating individual
  std::set<Atom> atoms;

  auto tie() const { return std::tie(origin, atoms); }
  friend bool operator==(const LabelSet& a, const LabelSet& b) {
    return a.tie() == b.tie();
  }
};

/// An exemplar as a multiset of label sets, ordered by originating node.
/// The exemplar's own node contributes nothing.
struct ConceptSetDescription {
  std::string exemplar;
  std::vector<LabelSet> labels;

  friend bool operator==(const ConceptSetDescription& a,
                         const ConceptSetDescription& b) {
    return a.exemplar == b.exemplar && a.labels == b.labels;
  }
};

ConceptSetDescription roll_up(const ABoxComponent& comp,
                              const RollupOptions& options = {});

}  // namespace semcf
