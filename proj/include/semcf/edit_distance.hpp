#pragma once

#include <atomic>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "semcf/atom.hpp"
#include "semcf/cost_model.hpp"
#include "semcf/rollup.hpp"

namespace semcf {

/// One semantic edit: replace `from` by `to` (TOP encodes insertion and
/// deletion). `site` is the source-side label origin ("" for whole-label
/// insertions); `target_site` the target-side origin ("" for whole-label
/// deletions).
struct EditOp {
  Atom from;
  Atom to;
  double cost = 0;
  std::string site;
  std::string target_site;

  friend bool operator==(const EditOp& a, const EditOp& b) {
    return a.from == b.from && a.to == b.to && a.cost == b.cost &&
           a.site == b.site && a.target_site == b.target_site;
  }
};

/// An ordered set of edits turning one description into another.
struct EditPath {
  std::string source;
  std::string target;
  std::vector<EditOp> ops;
  double total_cost = 0;
};

struct LabelMatchResult {
  double cost = 0;
  std::vector<EditOp> ops;  // sites unset; the description level fills them
};

/// Optimal edit set between two label sets: the smaller side is padded
/// with TOP so the bipartite matching is full, identity pairs are dropped.
LabelMatchResult label_edit_distance(const CostModel& cm,
                                     const std::set<Atom>& a,
                                     const std::set<Atom>& b);

/// Two-level set edit distance: every pair of labels is priced by
/// label_edit_distance, the smaller description is padded with empty-label
/// sentinels priced as whole-label insertion/deletion, and the outer
/// matching's inner edit lists concatenate into one path.
EditPath description_edit_distance(const CostModel& cm,
                                   const ConceptSetDescription& a,
                                   const ConceptSetDescription& b);

/// Replay a path produced from `a`. Throws Errc::inconsistent_path when an
/// op references a missing label or atom.
ConceptSetDescription apply_edit_path(const ConceptSetDescription& a,
                                      const EditPath& p);

/// Multiset-of-sets equality ignoring originating nodes and empty labels
/// (an empty label set carries no information).
bool descriptions_equivalent(const ConceptSetDescription& a,
                             const ConceptSetDescription& b);

/// Reverse a path (swap edit directions and sites). Faithful only under
/// symmetric costs; callers guard on the cost model.
EditPath reverse_path(const EditPath& p);

namespace stats {
/// Process-wide count of description_edit_distance invocations; lets the
/// query layer prove it reuses cached paths instead of recomputing.
extern std::atomic<uint64_t> description_distance_calls;
}  // namespace stats

}  // namespace semcf
