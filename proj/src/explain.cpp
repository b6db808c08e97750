#include "semcf/explain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "semcf/errors.hpp"

namespace semcf {

namespace {

std::string render_site(const std::string& site) {
  return site.empty() ? "new" : site;
}

std::string render_op(const EditOp& op) {
  if (op.from.is_top())
    return "insert " + op.to.str() + "(" + render_site(op.site) + ")";
  if (op.to.is_top())
    return "delete " + op.from.str() + "(" + op.site + ")";
  return "replace " + op.from.str() + "(" + op.site + ") with " +
         op.to.str() + "(" + op.site + ")";
}

bool has_role_assertion(const ExplanationDataset& ds, const std::string& role,
                        const std::string& subject,
                        const std::string& object) {
  for (const auto& a : ds.kb.role_assertions)
    if (a.role_name == role && a.subject == subject && a.object == object)
      return true;
  return false;
}

bool has_concept_assertion(const ExplanationDataset& ds,
                           const std::string& concept_name,
                           const std::string& individual) {
  for (const auto& a : ds.kb.concept_assertions)
    if (a.concept_name == concept_name && a.individual == individual)
      return true;
  return false;
}

}  // namespace

std::vector<ABoxEdit> collapse_to_abox_edits(const Explanation& x,
                                             const ExplanationDataset& ds) {
  const auto& ops = x.edits.ops;
  std::vector<char> consumed(ops.size(), 0);
  std::vector<ABoxEdit> edits;

  // A concept edit at node b is an assertion edit on b. The roll-up echoes
  // the same change as an existential edit at every neighbor a with r(a,b);
  // witnessed echoes are consumed so the change is presented once.
  for (size_t idx = 0; idx < ops.size(); ++idx) {
    const EditOp& op = ops[idx];
    if (op.site.empty()) continue;
    bool concept_replace = op.from.kind == AtomKind::atomic_concept &&
                           op.to.kind == AtomKind::atomic_concept;
    bool concept_delete =
        op.from.kind == AtomKind::atomic_concept && op.to.is_top();
    bool concept_insert =
        op.from.is_top() && op.to.kind == AtomKind::atomic_concept;
    if (!concept_replace && !concept_delete && !concept_insert) continue;

    const std::string& node = op.site;
    consumed[idx] = 1;
    for (size_t other = 0; other < ops.size(); ++other) {
      if (other == idx || consumed[other]) continue;
      const EditOp& ex = ops[other];
      if (ex.site.empty()) continue;
      bool echo = false;
      if (concept_replace && ex.from.kind == AtomKind::existential &&
          ex.to.kind == AtomKind::existential &&
          ex.from.name == ex.to.name && ex.from.filler == op.from.name &&
          ex.to.filler == op.to.name) {
        echo = has_role_assertion(ds, ex.from.name, ex.site, node) &&
               has_concept_assertion(ds, op.from.name, node);
      } else if (concept_delete && ex.from.kind == AtomKind::existential &&
                 ex.to.is_top() && ex.from.filler == op.from.name) {
        echo = has_role_assertion(ds, ex.from.name, ex.site, node) &&
               has_concept_assertion(ds, op.from.name, node);
      } else if (concept_insert && ex.from.is_top() &&
                 ex.to.kind == AtomKind::existential &&
                 ex.to.filler == op.to.name) {
        echo = has_role_assertion(ds, ex.to.name, ex.site, node);
      }
      if (echo) consumed[other] = 1;
    }

    ABoxEdit edit;
    edit.from = op.from;
    edit.to = op.to;
    edit.individual = node;
    if (concept_replace) {
      edit.kind = "replace";
      edit.text = "replace " + op.from.str() + "(" + node + ") with " +
                  op.to.str() + "(" + node + ")";
    } else if (concept_delete) {
      edit.kind = "delete";
      edit.text = "delete " + op.from.str() + "(" + node + ")";
    } else {
      edit.kind = "insert";
      edit.text = "insert " + op.to.str() + "(" + node + ")";
    }
    edits.push_back(std::move(edit));
  }

  for (size_t idx = 0; idx < ops.size(); ++idx) {
    if (consumed[idx]) continue;
    const EditOp& op = ops[idx];
    ABoxEdit edit;
    edit.kind = "op";
    edit.from = op.from;
    edit.to = op.to;
    edit.text = render_op(op);
    edits.push_back(std::move(edit));
  }
  return edits;
}

std::vector<Explanation> counterfactual(const DistanceCache& cache,
                                        const ExplanationDataset& ds,
                                        const std::string& source,
                                        const std::string& target_class,
                                        size_t k,
                                        const std::string& table_id) {
  NearestResult nearest =
      nearest_by_class(cache, ds, source, target_class, k, table_id);
  std::vector<Explanation> out;
  size_t src = *cache.index_of(source);
  for (const auto& [candidate, cost] : nearest.hits) {
    size_t tgt = *cache.index_of(candidate);
    auto path = cache.path_between(src, tgt);
    if (!path) continue;  // finite cost always has a stored path
    Explanation x;
    x.source = source;
    x.target_class = target_class;
    x.counterfactual = candidate;
    x.edits = std::move(*path);
    x.collapsed = collapse_to_abox_edits(x, ds);
    (void)cost;
    out.push_back(std::move(x));
  }
  return out;
}

ImportanceReport global_importance(const DistanceCache& cache,
                                   const ExplanationDataset& ds,
                                   const SourceSelector& selector,
                                   const std::string& target_class,
                                   const std::string& table_id) {
  std::vector<std::string> sources;
  if (!selector.exemplars.empty()) {
    for (const auto& e : selector.exemplars) {
      if (!cache.index_of(e))
        throw Error(Errc::unknown_exemplar,
                    "exemplar '" + e + "' is not in the cache");
      sources.push_back(e);
    }
  } else if (!selector.source_class.empty()) {
    const PredictionTable& table = ds.table(table_id);
    for (const auto& e : cache.exemplars()) {
      auto it = table.find(e);
      if (it != table.end() && it->second == selector.source_class)
        sources.push_back(e);
    }
  }
  if (sources.empty())
    throw Error(Errc::empty_selector,
                "source selector matches no exemplars");

  ImportanceReport report;
  report.target_class = target_class;
  std::map<Atom, std::pair<int64_t, int64_t>> counts;  // atom -> (intro, removed)
  for (const auto& source : sources) {
    auto explanations =
        counterfactual(cache, ds, source, target_class, 1, table_id);
    if (explanations.empty()) {
      ++report.skipped;
      continue;
    }
    ++report.n_explanations;
    for (const auto& op : explanations.front().edits.ops) {
      if (!op.to.is_top()) ++counts[op.to].first;
      if (!op.from.is_top()) ++counts[op.from].second;
    }
  }
  if (report.n_explanations == 0)
    throw Error(Errc::empty_selector,
                "no selected exemplar has a finite-cost counterfactual");

  for (const auto& [atom, c] : counts) {
    ImportanceRow row;
    row.atom = atom;
    row.introduced = c.first;
    row.removed = c.second;
    row.importance =
        double(c.first - c.second) / double(report.n_explanations);
    report.rows.push_back(std::move(row));
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ImportanceRow& a, const ImportanceRow& b) {
              double ma = std::abs(a.importance), mb = std::abs(b.importance);
              if (ma != mb) return ma > mb;
              return a.atom.str() < b.atom.str();
            });
  return report;
}

}  // namespace semcf
