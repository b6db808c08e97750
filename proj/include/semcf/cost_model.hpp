#pragma once

#include <limits>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "semcf/atom.hpp"
#include "semcf/tbox_graph.hpp"

namespace semcf {

inline constexpr double kInfiniteCost =
    std::numeric_limits<double>::infinity();

/// One manual edit-cost rule. `from`/`to` use the display syntax of Atom:
/// bare identifiers, "TOP", or "exists:role:filler". Cost is nonnegative
/// or infinite, and may be asymmetric.
struct OverrideRule {
  std::string from;
  std::string to;
  double cost = 0;
};

/// Parse the override JSON array. Rejects negative costs, identity rules
/// and TOP-to-TOP rules.
std::vector<OverrideRule> parse_overrides_text(const std::string& json_text);
std::vector<OverrideRule> load_overrides_file(const std::string& path);
/// Canonical bytes used for the cost-config fingerprint.
std::string serialize_overrides(const std::vector<OverrideRule>& rules);

/// Edit costs from undirected shortest paths on the TBox graph, with
/// override rules taking total precedence. Logically immutable; the
/// distance memo fills lazily and is safe under concurrent readers.
class CostModel {
 public:
  explicit CostModel(TBoxGraph graph, std::vector<OverrideRule> overrides = {});

  /// Hop distance between two atomic atoms (concepts, roles, or TOP) on the
  /// undirected TBox graph. Throws Errc::kind_mismatch when one side is a
  /// concept and the other a role.
  double atom_distance(const Atom& x, const Atom& y) const;

  /// Cost of the edit from -> to. Overrides first; otherwise atomic pairs
  /// use atom_distance, existential pairs add role and filler distances,
  /// existential vs TOP sums the parts' TOP distances, and existential vs
  /// atomic concept is priced as delete + insert.
  double edit_cost(const Atom& from, const Atom& to) const;

  const TBoxGraph& graph() const { return graph_; }
  bool has_overrides() const { return !overrides_.empty(); }
  /// True when every override has a mirror rule with equal cost.
  bool overrides_symmetric() const;

 private:
  const std::vector<double>& distance_row(int node) const;

  TBoxGraph graph_;
  std::map<std::pair<std::string, std::string>, double> overrides_;
  mutable std::shared_mutex mu_;
  mutable std::vector<std::vector<double>> rows_;  // lazy BFS rows by node
};

}  // namespace semcf
