#include "semcf/ged.hpp"

#include <algorithm>
#include <map>

#include "semcf/edit_distance.hpp"
#include "semcf/errors.hpp"
#include "semcf/matching.hpp"

namespace semcf {

namespace {

using Clock = std::chrono::steady_clock;

std::set<Atom> concept_atoms(const std::set<std::string>& labels) {
  std::set<Atom> out;
  for (const auto& c : labels) out.insert(Atom::atomic(c));
  return out;
}

std::set<Atom> role_atoms(const std::set<std::string>& roles) {
  std::set<Atom> out;
  for (const auto& r : roles) out.insert(Atom::role(r));
  return out;
}

double safe_label_cost(const CostModel& cm, const std::set<Atom>& a,
                       const std::set<Atom>& b) {
  try {
    return label_edit_distance(cm, a, b).cost;
  } catch (const InfeasibleError&) {
    return kInfiniteCost;
  }
}

struct GedInstance {
  const CostModel& cm;
  std::vector<std::string> a_names, b_names;
  std::vector<std::set<Atom>> a_labels, b_labels;
  std::map<std::pair<int, int>, std::set<Atom>> a_edges, b_edges;
  std::vector<std::vector<double>> sub_cost;
  std::vector<double> del_cost, ins_cost;

  int na() const { return int(a_names.size()); }
  int nb() const { return int(b_names.size()); }

  const std::set<Atom>* edge(const std::map<std::pair<int, int>,
                                            std::set<Atom>>& edges,
                             int u, int v) const {
    auto it = edges.find({u, v});
    return it == edges.end() ? nullptr : &it->second;
  }

  double side_cost(const std::set<Atom>& roles, bool inserting) const {
    double sum = 0;
    for (const auto& r : roles)
      sum += inserting ? cm.edit_cost(Atom::top(), r)
                       : cm.edit_cost(r, Atom::top());
    return sum;
  }

  double edge_pair_cost(const std::set<Atom>* a, const std::set<Atom>* b) const {
    if (!a && !b) return 0;
    if (a && !b) return side_cost(*a, false);
    if (!a && b) return side_cost(*b, true);
    return safe_label_cost(cm, *a, *b);
  }

  /// Edge cost contribution of deciding node k, against all previously
  /// decided nodes. mapping[i] >= 0 maps to a B node, -1 deletes.
  double incremental_edges(const std::vector<int>& mapping, int k) const {
    double sum = 0;
    int vk = mapping[k];
    for (int m = 0; m < k; ++m) {
      int vm = mapping[m];
      bool both = vk >= 0 && vm >= 0;
      sum += edge_pair_cost(edge(a_edges, k, m),
                            both ? edge(b_edges, vk, vm) : nullptr);
      sum += edge_pair_cost(edge(a_edges, m, k),
                            both ? edge(b_edges, vm, vk) : nullptr);
    }
    return sum;
  }

  double node_cost(int i, int v) const {
    return v >= 0 ? sub_cost[i][v] : del_cost[i];
  }

  /// Insertions owed for unmapped B nodes and their incident edges.
  double completion_cost(const std::vector<char>& used_b) const {
    double sum = 0;
    for (int j = 0; j < nb(); ++j)
      if (!used_b[j]) sum += ins_cost[j];
    for (const auto& [e, roles] : b_edges)
      if (!used_b[e.first] || !used_b[e.second])
        sum += side_cost(roles, true);
    return sum;
  }

  double full_cost(const std::vector<int>& mapping) const {
    double sum = 0;
    std::vector<char> used_b(nb(), 0);
    for (int i = 0; i < na(); ++i) {
      sum += node_cost(i, mapping[i]);
      sum += incremental_edges(mapping, i);
      if (mapping[i] >= 0) used_b[mapping[i]] = 1;
    }
    return sum + completion_cost(used_b);
  }

  /// Assignment relaxation over undecided nodes: substitutions, deletions
  /// and insertions without edge terms. Admissible since edge costs are
  /// nonnegative and node costs are exact for every completion.
  double lower_bound(int k, const std::vector<char>& used_b) const {
    std::vector<int> rows, cols;
    for (int i = k; i < na(); ++i) rows.push_back(i);
    for (int j = 0; j < nb(); ++j)
      if (!used_b[j]) cols.push_back(j);
    int r = int(rows.size());
    int c = int(cols.size());
    if (r == 0 && c == 0) return 0;
    int n = r + c;
    CostMatrix w(n, std::vector<double>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i < r && j < c)
          w[i][j] = sub_cost[rows[i]][cols[j]];
        else if (i < r)
          w[i][j] = (j - c == i) ? del_cost[rows[i]] : kInfiniteCost;
        else if (j < c)
          w[i][j] = (i - r == j) ? ins_cost[cols[j]] : kInfiniteCost;
        else
          w[i][j] = 0;
      }
    try {
      return min_match_cost(w);
    } catch (const InfeasibleError&) {
      return kInfiniteCost;
    }
  }
};

GedInstance build_instance(const CostModel& cm, const ABoxComponent& a,
                           const ABoxComponent& b) {
  GedInstance inst{cm, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  inst.a_names = a.nodes;
  inst.b_names = b.nodes;
  std::map<std::string, int> ai, bi;
  for (size_t i = 0; i < inst.a_names.size(); ++i) ai[inst.a_names[i]] = int(i);
  for (size_t j = 0; j < inst.b_names.size(); ++j) bi[inst.b_names[j]] = int(j);
  for (const auto& n : inst.a_names) {
    auto it = a.labels.find(n);
    inst.a_labels.push_back(
        it == a.labels.end() ? std::set<Atom>{} : concept_atoms(it->second));
  }
  for (const auto& n : inst.b_names) {
    auto it = b.labels.find(n);
    inst.b_labels.push_back(
        it == b.labels.end() ? std::set<Atom>{} : concept_atoms(it->second));
  }
  for (const auto& [e, roles] : a.edges)
    inst.a_edges[{ai[e.first], ai[e.second]}] = role_atoms(roles);
  for (const auto& [e, roles] : b.edges)
    inst.b_edges[{bi[e.first], bi[e.second]}] = role_atoms(roles);

  int na = inst.na(), nb = inst.nb();
  inst.sub_cost.assign(na, std::vector<double>(nb, 0));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      inst.sub_cost[i][j] =
          safe_label_cost(cm, inst.a_labels[i], inst.b_labels[j]);
  inst.del_cost.resize(na);
  for (int i = 0; i < na; ++i) {
    double sum = 0;
    for (const auto& atom : inst.a_labels[i])
      sum += cm.edit_cost(atom, Atom::top());
    inst.del_cost[i] = sum;
  }
  inst.ins_cost.resize(nb);
  for (int j = 0; j < nb; ++j) {
    double sum = 0;
    for (const auto& atom : inst.b_labels[j])
      sum += cm.edit_cost(Atom::top(), atom);
    inst.ins_cost[j] = sum;
  }
  return inst;
}

struct Search {
  const GedInstance& inst;
  Clock::time_point deadline;
  bool has_deadline;
  bool timed_out = false;
  double best = kInfiniteCost;
  std::vector<int> best_mapping;
  std::vector<int> mapping;
  std::vector<char> used_b;

  static constexpr double kEps = 1e-9;

  void dfs(int k, double g) {
    if (has_deadline && Clock::now() > deadline) {
      timed_out = true;
      return;
    }
    if (k == int(inst.na())) {
      double total = g + inst.completion_cost(used_b);
      if (total < best - kEps) {
        best = total;
        best_mapping = mapping;
      }
      return;
    }
    double h = inst.lower_bound(k, used_b);
    if (g + h > best + kEps) return;
    for (int v = 0; v < inst.nb() && !timed_out; ++v) {
      if (used_b[v]) continue;
      mapping[k] = v;
      used_b[v] = 1;
      double step = inst.node_cost(k, v) + inst.incremental_edges(mapping, k);
      if (g + step <= best + kEps) dfs(k + 1, g + step);
      used_b[v] = 0;
    }
    if (timed_out) return;
    mapping[k] = -1;
    double step = inst.node_cost(k, -1) + inst.incremental_edges(mapping, k);
    if (g + step <= best + kEps) dfs(k + 1, g + step);
    mapping[k] = -2;
  }
};

/// Cheap complete mapping to seed the upper bound: per node, the locally
/// cheapest choice against what is already decided. Ties prefer the
/// earliest substitution over deletion, matching the search order.
std::vector<int> greedy_mapping(const GedInstance& inst) {
  std::vector<int> mapping(inst.na(), -2);
  std::vector<char> used(inst.nb(), 0);
  for (int k = 0; k < inst.na(); ++k) {
    int best_v = -1;
    double best_step = kInfiniteCost;
    for (int v = 0; v < inst.nb(); ++v) {
      if (used[v]) continue;
      mapping[k] = v;
      double step = inst.node_cost(k, v) + inst.incremental_edges(mapping, k);
      if (step < best_step) {
        best_step = step;
        best_v = v;
      }
    }
    mapping[k] = -1;
    double del_step =
        inst.node_cost(k, -1) + inst.incremental_edges(mapping, k);
    if (del_step < best_step) {
      best_step = del_step;
      best_v = -1;
    }
    mapping[k] = best_v;
    if (best_v >= 0) used[best_v] = 1;
  }
  return mapping;
}

}  // namespace

GedResult exact_ged(const CostModel& cm, const ABoxComponent& a,
                    const ABoxComponent& b, const GedBudget& budget) {
  if (int(a.nodes.size()) > budget.max_nodes ||
      int(b.nodes.size()) > budget.max_nodes)
    throw Error(Errc::budget_exceeded,
                "component exceeds the node budget of " +
                    std::to_string(budget.max_nodes) + " (" +
                    std::to_string(a.nodes.size()) + " and " +
                    std::to_string(b.nodes.size()) + " nodes)");

  GedInstance inst = build_instance(cm, a, b);
  Search search{inst,
                Clock::now() + budget.time_limit,
                budget.time_limit.count() > 0,
                false,
                kInfiniteCost,
                {},
                {},
                {}};
  search.mapping.assign(inst.na(), -2);
  search.used_b.assign(inst.nb(), 0);

  std::vector<int> seed = greedy_mapping(inst);
  search.best = inst.full_cost(seed);
  search.best_mapping = seed;
  search.dfs(0, 0);

  const std::vector<int>& mapping = search.best_mapping;
  GedResult result;
  result.cost = inst.full_cost(mapping);
  result.optimal = !search.timed_out;

  std::vector<char> used_b(inst.nb(), 0);
  for (int i = 0; i < inst.na(); ++i)
    if (mapping[i] >= 0) used_b[mapping[i]] = 1;

  for (int i = 0; i < inst.na(); ++i) {
    if (mapping[i] >= 0) {
      double c = inst.sub_cost[i][mapping[i]];
      if (c > 0)
        result.ops.push_back({GraphOpKind::node_substitute, inst.a_names[i],
                              "", inst.b_names[mapping[i]], "", c});
    } else {
      result.ops.push_back({GraphOpKind::node_delete, inst.a_names[i], "", "",
                            "", inst.del_cost[i]});
    }
  }
  for (int j = 0; j < inst.nb(); ++j)
    if (!used_b[j])
      result.ops.push_back({GraphOpKind::node_insert, "", "", inst.b_names[j],
                            "", inst.ins_cost[j]});

  for (int i = 0; i < inst.na(); ++i) {
    for (int i2 = 0; i2 < inst.na(); ++i2) {
      if (i == i2) continue;
      const auto* ar = inst.edge(inst.a_edges, i, i2);
      bool both = mapping[i] >= 0 && mapping[i2] >= 0;
      const auto* br =
          both ? inst.edge(inst.b_edges, mapping[i], mapping[i2]) : nullptr;
      if (!ar && !br) continue;
      double c = inst.edge_pair_cost(ar, br);
      if (ar && br) {
        if (c > 0)
          result.ops.push_back({GraphOpKind::edge_substitute, inst.a_names[i],
                                inst.a_names[i2], inst.b_names[mapping[i]],
                                inst.b_names[mapping[i2]], c});
      } else if (ar) {
        result.ops.push_back({GraphOpKind::edge_delete, inst.a_names[i],
                              inst.a_names[i2], "", "", c});
      } else {
        result.ops.push_back({GraphOpKind::edge_insert, "", "",
                              inst.b_names[mapping[i]],
                              inst.b_names[mapping[i2]], c});
      }
    }
  }
  for (const auto& [e, roles] : inst.b_edges) {
    if (used_b[e.first] && used_b[e.second]) continue;
    result.ops.push_back({GraphOpKind::edge_insert, "", "",
                          inst.b_names[e.first], inst.b_names[e.second],
                          inst.side_cost(roles, true)});
  }
  return result;
}

}  // namespace semcf
