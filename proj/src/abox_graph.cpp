#include "semcf/abox_graph.hpp"

#include <algorithm>
#include <queue>

#include "semcf/errors.hpp"

namespace semcf {

int ABoxGraph::node(const std::string& name) const {
  auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

ABoxGraph build_abox_graph(const ExplanationDataset& ds) {
  ABoxGraph g;
  g.nodes.assign(ds.vocabulary.individuals.begin(),
                 ds.vocabulary.individuals.end());
  for (size_t i = 0; i < g.nodes.size(); ++i) g.index[g.nodes[i]] = int(i);
  g.labels.assign(g.nodes.size(), {});
  g.undirected_adj.assign(g.nodes.size(), {});

  for (const auto& a : ds.kb.concept_assertions) {
    int n = g.node(a.individual);
    if (n >= 0) g.labels[n].insert(a.concept_name);
  }
  for (const auto& a : ds.kb.role_assertions) {
    int s = g.node(a.subject);
    int o = g.node(a.object);
    if (s < 0 || o < 0) continue;
    g.edges[{s, o}].insert(a.role_name);
  }
  for (const auto& [e, _] : g.edges) {
    g.undirected_adj[e.first].push_back(e.second);
    g.undirected_adj[e.second].push_back(e.first);
  }
  for (auto& nbrs : g.undirected_adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

ABoxComponent exemplar_component(const ABoxGraph& g,
                                 const std::string& exemplar) {
  int start = g.node(exemplar);
  if (start < 0)
    throw Error(Errc::unknown_exemplar,
                "exemplar '" + exemplar + "' is not in the ABox graph");

  std::vector<bool> in(g.nodes.size(), false);
  std::queue<int> q;
  q.push(start);
  in[start] = true;
  while (!q.empty()) {
    int n = q.front();
    q.pop();
    for (int m : g.undirected_adj[n])
      if (!in[m]) {
        in[m] = true;
        q.push(m);
      }
  }

  ABoxComponent comp;
  comp.exemplar = exemplar;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    if (!in[i]) continue;
    comp.nodes.push_back(g.nodes[i]);
    comp.labels[g.nodes[i]] = g.labels[i];
  }
  for (const auto& [e, roles] : g.edges)
    if (in[e.first] && in[e.second])
      comp.edges[{g.nodes[e.first], g.nodes[e.second]}] = roles;
  return comp;
}

std::set<Atom> concept_label_atoms(const ABoxComponent& comp,
                                   const std::string& node) {
  std::set<Atom> out;
  auto it = comp.labels.find(node);
  if (it == comp.labels.end()) return out;
  for (const auto& c : it->second) out.insert(Atom::atomic(c));
  return out;
}

std::set<Atom> role_label_atoms(const ABoxComponent& comp,
                                const std::string& subject,
                                const std::string& object) {
  std::set<Atom> out;
  auto it = comp.edges.find({subject, object});
  if (it == comp.edges.end()) return out;
  for (const auto& r : it->second) out.insert(Atom::role(r));
  return out;
}

}  // namespace semcf
