#include "semcf/cost_model.hpp"

#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "semcf/errors.hpp"

namespace semcf {

using nlohmann::json;

namespace {

void check_override_atom(const std::string& text) {
  if (text.empty())
    throw Error(Errc::validation, "empty identifier in override rule");
  if (text.rfind("exists:", 0) == 0) {
    auto rest = text.substr(7);
    auto sep = rest.find(':');
    if (sep == std::string::npos || sep == 0 || sep + 1 == rest.size())
      throw Error(Errc::validation,
                  "bad existential syntax in override: '" + text + "'");
  }
}

double parse_cost_value(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfiniteCost;
    throw Error(Errc::validation,
                "override cost must be a nonnegative number or \"inf\"");
  }
  if (!j.is_number())
    throw Error(Errc::validation,
                "override cost must be a nonnegative number or \"inf\"");
  double v = j.get<double>();
  if (v < 0)
    throw Error(Errc::validation, "override cost must be nonnegative");
  return v;
}

}  // namespace

std::vector<OverrideRule> parse_overrides_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, std::string("malformed override JSON: ") +
                                 e.what());
  }
  if (!doc.is_array())
    throw Error(Errc::parse, "override document must be a JSON array");
  std::vector<OverrideRule> rules;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("from") ||
        !entry.contains("to") || !entry.contains("cost"))
      throw Error(Errc::parse,
                  "override rule needs 'from', 'to' and 'cost'");
    OverrideRule rule;
    rule.from = entry["from"].get<std::string>();
    rule.to = entry["to"].get<std::string>();
    rule.cost = parse_cost_value(entry["cost"]);
    check_override_atom(rule.from);
    check_override_atom(rule.to);
    if (rule.from == rule.to)
      throw Error(Errc::validation,
                  "identity override '" + rule.from + "' not allowed");
    if (rule.from == kTopName && rule.to == kTopName)
      throw Error(Errc::validation, "override may not map TOP to TOP");
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<OverrideRule> load_overrides_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open override file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_overrides_text(buf.str());
}

std::string serialize_overrides(const std::vector<OverrideRule>& rules) {
  std::map<std::pair<std::string, std::string>, double> sorted;
  for (const auto& r : rules) sorted[{r.from, r.to}] = r.cost;
  json doc = json::array();
  for (const auto& [key, cost] : sorted) {
    json entry = {{"from", key.first}, {"to", key.second}};
    if (cost == kInfiniteCost)
      entry["cost"] = "inf";
    else
      entry["cost"] = cost;
    doc.push_back(std::move(entry));
  }
  return doc.dump();
}

CostModel::CostModel(TBoxGraph graph, std::vector<OverrideRule> overrides)
    : graph_(std::move(graph)) {
  for (const auto& r : overrides) overrides_[{r.from, r.to}] = r.cost;
  rows_.resize(graph_.size());
}

bool CostModel::overrides_symmetric() const {
  for (const auto& [key, cost] : overrides_) {
    auto mirror = overrides_.find({key.second, key.first});
    if (mirror == overrides_.end() || mirror->second != cost) return false;
  }
  return true;
}

const std::vector<double>& CostModel::distance_row(int node) const {
  {
    std::shared_lock lock(mu_);
    if (!rows_[node].empty()) return rows_[node];
  }
  std::unique_lock lock(mu_);
  if (!rows_[node].empty()) return rows_[node];
  std::vector<double> dist(graph_.size(), kInfiniteCost);
  std::deque<int> q;
  dist[node] = 0;
  q.push_back(node);
  while (!q.empty()) {
    int n = q.front();
    q.pop_front();
    for (int m : graph_.adj[n])
      if (dist[m] == kInfiniteCost) {
        dist[m] = dist[n] + 1;
        q.push_back(m);
      }
  }
  rows_[node] = std::move(dist);
  return rows_[node];
}

double CostModel::atom_distance(const Atom& x, const Atom& y) const {
  if (x.kind == AtomKind::existential || y.kind == AtomKind::existential)
    throw Error(Errc::kind_mismatch,
                "atom_distance is defined on atomic atoms and TOP only");
  if (x == y) return 0;
  if (!x.is_top() && !y.is_top() && x.kind != y.kind)
    throw Error(Errc::kind_mismatch, "cannot compare concept '" +
                                         (x.kind == AtomKind::atomic_concept
                                              ? x.name
                                              : y.name) +
                                         "' with role '" +
                                         (x.kind == AtomKind::role ? x.name
                                                                   : y.name) +
                                         "'");
  int a = x.is_top() ? TBoxGraph::kTop : graph_.node(x.name);
  int b = y.is_top() ? TBoxGraph::kTop : graph_.node(y.name);
  if (a < 0) throw Error(Errc::validation, "unknown atom '" + x.name + "'");
  if (b < 0) throw Error(Errc::validation, "unknown atom '" + y.name + "'");
  if (a == b) return 0;
  return distance_row(a)[b];
}

double CostModel::edit_cost(const Atom& from, const Atom& to) const {
  if (from.is_top() && to.is_top())
    throw Error(Errc::validation, "edit from TOP to TOP is undefined");
  if (!overrides_.empty()) {
    auto it = overrides_.find({from.str(), to.str()});
    if (it != overrides_.end()) return it->second;
  }

  auto filler_atom = [](const Atom& e) {
    return e.filler == kTopName ? Atom::top() : Atom::atomic(e.filler);
  };
  bool from_exists = from.kind == AtomKind::existential;
  bool to_exists = to.kind == AtomKind::existential;
  if (from_exists && to_exists)
    return atom_distance(Atom::role(from.name), Atom::role(to.name)) +
           atom_distance(filler_atom(from), filler_atom(to));
  if (from_exists && to.is_top())
    return atom_distance(Atom::role(from.name), Atom::top()) +
           atom_distance(filler_atom(from), Atom::top());
  if (from.is_top() && to_exists)
    return atom_distance(Atom::role(to.name), Atom::top()) +
           atom_distance(filler_atom(to), Atom::top());
  if (from_exists || to_exists) {
    const Atom& other = from_exists ? to : from;
    if (other.kind != AtomKind::atomic_concept)
      throw Error(Errc::kind_mismatch,
                  "cannot edit between an existential and a role");
    // no shared hierarchy: priced as delete + insert
    return edit_cost(from, Atom::top()) + edit_cost(Atom::top(), to);
  }
  return atom_distance(from, to);
}

}  // namespace semcf
