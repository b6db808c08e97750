#include "semcf/tbox_graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace semcf {

int TBoxGraph::node(const std::string& name) const {
  auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

TBoxGraph build_tbox_graph(const ExplanationDataset& ds) {
  TBoxGraph g;
  g.names.push_back(kTopName);
  g.kinds.push_back(AtomKind::top);
  for (const auto& c : ds.vocabulary.concepts) {
    g.names.push_back(c);
    g.kinds.push_back(AtomKind::atomic_concept);
  }
  for (const auto& r : ds.vocabulary.roles) {
    g.names.push_back(r);
    g.kinds.push_back(AtomKind::role);
  }
  for (size_t i = 0; i < g.names.size(); ++i) g.index[g.names[i]] = int(i);

  std::set<std::pair<int, int>> edges;
  std::vector<bool> has_outgoing(g.names.size(), false);
  for (const auto& ax : ds.kb.tbox) {
    int sub = g.node(ax.sub);
    int sup = g.node(ax.sup);
    if (sub < 0 || sup < 0) continue;  // undeclared; validation reports it
    edges.insert({sub, sup});
    has_outgoing[sub] = true;
  }
  for (size_t i = 1; i < g.names.size(); ++i)
    if (!has_outgoing[i]) edges.insert({int(i), TBoxGraph::kTop});

  auto build_adj = [&] {
    g.adj.assign(g.names.size(), {});
    for (const auto& [a, b] : edges) {
      g.adj[a].push_back(b);
      g.adj[b].push_back(a);
    }
    for (auto& nbrs : g.adj) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
  };
  build_adj();

  // Subsumption cycles can leave whole components with no TOP attachment
  // (every member has an outgoing axiom edge). Attach each such component
  // through its smallest-named member so the undirected graph stays
  // connected and insertion/deletion distances stay finite.
  std::vector<bool> reached(g.names.size(), false);
  std::queue<int> q;
  q.push(TBoxGraph::kTop);
  reached[TBoxGraph::kTop] = true;
  while (!q.empty()) {
    int n = q.front();
    q.pop();
    for (int m : g.adj[n])
      if (!reached[m]) {
        reached[m] = true;
        q.push(m);
      }
  }
  bool patched = false;
  for (size_t i = 1; i < g.names.size(); ++i) {
    if (reached[i]) continue;
    // flood this stranded component; indices scan ascending, and names are
    // sorted by construction, so i is its smallest-named member
    edges.insert({int(i), TBoxGraph::kTop});
    patched = true;
    reached[i] = true;
    q.push(int(i));
    while (!q.empty()) {
      int n = q.front();
      q.pop();
      for (int m : g.adj[n])
        if (!reached[m]) {
          reached[m] = true;
          q.push(m);
        }
    }
  }
  if (patched) build_adj();

  g.edges.assign(edges.begin(), edges.end());
  return g;
}

}  // namespace semcf
