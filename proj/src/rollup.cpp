#include "semcf/rollup.hpp"

#include "semcf/dataset.hpp"

namespace semcf {

ConceptSetDescription roll_up(const ABoxComponent& comp,
                              const RollupOptions& options) {
  ConceptSetDescription desc;
  desc.exemplar = comp.exemplar;

  for (const auto& node : comp.nodes) {
    if (node == comp.exemplar) continue;
    LabelSet label;
    label.origin = node;
    auto lit = comp.labels.find(node);
    if (lit != comp.labels.end()) {
      for (const auto& c : lit->second)
        if (c != kExemplarConcept) label.atoms.insert(Atom::atomic(c));
    }
    desc.labels.push_back(std::move(label));
  }

  auto label_of = [&](const std::string& node) -> LabelSet* {
    for (auto& l : desc.labels)
      if (l.origin == node) return &l;
    return nullptr;
  };

  // outgoing edges only; edges touching the exemplar node are dropped with it
  for (const auto& [endpoints, roles] : comp.edges) {
    const auto& [subject, object] = endpoints;
    if (subject == comp.exemplar || object == comp.exemplar) continue;
    LabelSet* label = label_of(subject);
    if (!label) continue;
    std::set<std::string> fillers;
    auto oit = comp.labels.find(object);
    if (oit != comp.labels.end()) {
      for (const auto& c : oit->second)
        if (c != kExemplarConcept) fillers.insert(c);
    }
    for (const auto& role : roles) {
      if (fillers.empty()) {
        if (options.unlabeled_filler_as_top)
          label->atoms.insert(Atom::exists(role, kTopName));
        continue;
      }
      for (const auto& filler : fillers)
        label->atoms.insert(Atom::exists(role, filler));
    }
  }
  return desc;
}

}  // namespace semcf
