#include "semcf/edit_distance.hpp"

#include <algorithm>
#include <map>

#include "semcf/errors.hpp"
#include "semcf/matching.hpp"

namespace semcf {

namespace stats {
std::atomic<uint64_t> description_distance_calls{0};
}

LabelMatchResult label_edit_distance(const CostModel& cm,
                                     const std::set<Atom>& a,
                                     const std::set<Atom>& b) {
  std::vector<Atom> left(a.begin(), a.end());
  std::vector<Atom> right(b.begin(), b.end());
  size_t n = std::max(left.size(), right.size());
  if (n == 0) return {};
  while (left.size() < n) left.push_back(Atom::top());
  while (right.size() < n) right.push_back(Atom::top());

  CostMatrix w(n, std::vector<double>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      w[i][j] = cm.edit_cost(left[i], right[j]);

  Matching m = min_weight_full_match(w);
  LabelMatchResult result;
  result.cost = m.cost;
  for (const auto& [i, j] : m.pairs) {
    if (left[i] == right[j]) continue;  // identity edits are dropped
    result.ops.push_back({left[i], right[j], w[i][j], {}, {}});
  }
  return result;
}

namespace {

double whole_label_cost(const CostModel& cm, const LabelSet& label,
                        bool inserting) {
  double sum = 0;
  for (const auto& atom : label.atoms)
    sum += inserting ? cm.edit_cost(Atom::top(), atom)
                     : cm.edit_cost(atom, Atom::top());
  return sum;
}

}  // namespace

EditPath description_edit_distance(const CostModel& cm,
                                   const ConceptSetDescription& a,
                                   const ConceptSetDescription& b) {
  stats::description_distance_calls.fetch_add(1, std::memory_order_relaxed);

  EditPath path;
  path.source = a.exemplar;
  path.target = b.exemplar;

  size_t p = a.labels.size();
  size_t q = b.labels.size();
  size_t n = std::max(p, q);
  if (n == 0) return path;

  // inner results for real label pairs; infeasible pairs become forbidden
  // edges of the outer instance
  std::vector<std::vector<LabelMatchResult>> inner(
      p, std::vector<LabelMatchResult>(q));
  CostMatrix w(n, std::vector<double>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i < p && j < q) {
        try {
          inner[i][j] = label_edit_distance(cm, a.labels[i].atoms,
                                            b.labels[j].atoms);
          w[i][j] = inner[i][j].cost;
        } catch (const InfeasibleError&) {
          w[i][j] = kInfiniteCost;
        }
      } else if (i >= p) {
        w[i][j] = whole_label_cost(cm, b.labels[j], /*inserting=*/true);
      } else {
        w[i][j] = whole_label_cost(cm, a.labels[i], /*inserting=*/false);
      }
    }
  }

  Matching m = min_weight_full_match(w);
  path.total_cost = m.cost;
  for (const auto& [i, j] : m.pairs) {
    if (size_t(i) < p && size_t(j) < q) {
      for (EditOp op : inner[i][j].ops) {
        op.site = a.labels[i].origin;
        op.target_site = b.labels[j].origin;
        path.ops.push_back(std::move(op));
      }
    } else if (size_t(i) >= p) {
      // whole-label insertion
      for (const auto& atom : b.labels[j].atoms)
        path.ops.push_back({Atom::top(), atom,
                            cm.edit_cost(Atom::top(), atom), std::string{},
                            b.labels[j].origin});
    } else {
      // whole-label deletion
      for (const auto& atom : a.labels[i].atoms)
        path.ops.push_back({atom, Atom::top(),
                            cm.edit_cost(atom, Atom::top()),
                            a.labels[i].origin, std::string{}});
    }
  }
  return path;
}

ConceptSetDescription apply_edit_path(const ConceptSetDescription& a,
                                      const EditPath& p) {
  // multiset per label: replacements may transit through duplicate states
  std::map<std::string, std::multiset<Atom>> working;
  for (const auto& label : a.labels) {
    if (working.count(label.origin))
      throw Error(Errc::inconsistent_path,
                  "duplicate label origin '" + label.origin + "'");
    working[label.origin] = {label.atoms.begin(), label.atoms.end()};
  }
  std::map<std::string, std::multiset<Atom>> created;

  for (const auto& op : p.ops) {
    if (op.site.empty()) {
      if (!op.from.is_top())
        throw Error(Errc::inconsistent_path,
                    "op without a site must be an insertion");
      created[op.target_site].insert(op.to);
      continue;
    }
    auto it = working.find(op.site);
    if (it == working.end())
      throw Error(Errc::inconsistent_path,
                  "op references missing label '" + op.site + "'");
    auto& atoms = it->second;
    if (!op.from.is_top()) {
      auto member = atoms.find(op.from);
      if (member == atoms.end())
        throw Error(Errc::inconsistent_path, "op removes absent atom '" +
                                                 op.from.str() + "' at '" +
                                                 op.site + "'");
      atoms.erase(member);
    }
    if (!op.to.is_top()) atoms.insert(op.to);
  }

  ConceptSetDescription out;
  out.exemplar = p.target;
  for (const auto& [origin, atoms] : working) {
    if (atoms.empty()) continue;
    out.labels.push_back({origin, {atoms.begin(), atoms.end()}});
  }
  for (const auto& [origin, atoms] : created) {
    if (atoms.empty()) continue;
    out.labels.push_back({"+" + origin, {atoms.begin(), atoms.end()}});
  }
  std::sort(out.labels.begin(), out.labels.end(),
            [](const LabelSet& x, const LabelSet& y) {
              return x.origin < y.origin;
            });
  return out;
}

bool descriptions_equivalent(const ConceptSetDescription& a,
                             const ConceptSetDescription& b) {
  std::multiset<std::set<Atom>> ma, mb;
  for (const auto& l : a.labels)
    if (!l.atoms.empty()) ma.insert(l.atoms);
  for (const auto& l : b.labels)
    if (!l.atoms.empty()) mb.insert(l.atoms);
  return ma == mb;
}

EditPath reverse_path(const EditPath& p) {
  EditPath rev;
  rev.source = p.target;
  rev.target = p.source;
  rev.total_cost = p.total_cost;
  rev.ops.reserve(p.ops.size());
  for (const auto& op : p.ops)
    rev.ops.push_back({op.to, op.from, op.cost, op.target_site, op.site});
  return rev;
}

}  // namespace semcf
