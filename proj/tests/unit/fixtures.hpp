// Shared dataset fixtures for the unit and acceptance suites.
#pragma once

#include <string>

#include "semcf/cost_model.hpp"
#include "semcf/dataset.hpp"
#include "semcf/tbox_graph.hpp"

namespace semcf::fixtures {

/// Two exemplars depicting an animal in a forest / in a bedroom; empty
/// TBox, two classes.
inline std::string toy_animals_json() {
  return R"({
    "concepts": ["Animal", "Forest", "Bedroom"],
    "roles": ["depicts", "isIn"],
    "classes": ["WildAnimal", "DomesticAnimal"],
    "tbox": [],
    "abox": {
      "concept_assertions": [
        {"concept": "Animal", "individual": "a"},
        {"concept": "Forest", "individual": "b"},
        {"concept": "Animal", "individual": "c"},
        {"concept": "Bedroom", "individual": "d"}
      ],
      "role_assertions": [
        {"role": "depicts", "subject": "e1", "object": "a"},
        {"role": "depicts", "subject": "e1", "object": "b"},
        {"role": "isIn", "subject": "a", "object": "b"},
        {"role": "depicts", "subject": "e2", "object": "c"},
        {"role": "depicts", "subject": "e2", "object": "d"},
        {"role": "isIn", "subject": "c", "object": "d"}
      ]
    },
    "exemplars": ["e1", "e2"],
    "predictions": {"default": {"e1": "WildAnimal", "e2": "DomesticAnimal"}}
  })";
}

/// The five-axiom animal hierarchy used throughout the cost tests.
inline std::string zoo_tbox_json() {
  return R"({
    "concepts": ["Cat", "Dog", "Ant", "Mammal", "Insect", "Animal"],
    "roles": [],
    "classes": [],
    "tbox": [
      {"sub": "Cat", "sup": "Mammal", "kind": "concept"},
      {"sub": "Dog", "sup": "Mammal", "kind": "concept"},
      {"sub": "Ant", "sup": "Insect", "kind": "concept"},
      {"sub": "Mammal", "sup": "Animal", "kind": "concept"},
      {"sub": "Insect", "sup": "Animal", "kind": "concept"}
    ],
    "abox": {"concept_assertions": [], "role_assertions": []},
    "exemplars": [],
    "predictions": {}
  })";
}

/// Cat eating a fish that is in water, plus the exemplar node.
inline std::string cat_fish_water_json() {
  return R"({
    "concepts": ["Cat", "Fish", "Water"],
    "roles": ["depicts", "eating", "in"],
    "classes": [],
    "tbox": [],
    "abox": {
      "concept_assertions": [
        {"concept": "Cat", "individual": "a"},
        {"concept": "Fish", "individual": "b"},
        {"concept": "Water", "individual": "c"}
      ],
      "role_assertions": [
        {"role": "depicts", "subject": "e", "object": "a"},
        {"role": "depicts", "subject": "e", "object": "b"},
        {"role": "depicts", "subject": "e", "object": "c"},
        {"role": "eating", "subject": "a", "object": "b"},
        {"role": "in", "subject": "b", "object": "c"}
      ]
    },
    "exemplars": ["e"],
    "predictions": {}
  })";
}

inline ExplanationDataset toy_animals() {
  return parse_dataset_text(toy_animals_json());
}

inline CostModel zoo_cost_model(std::vector<OverrideRule> overrides = {}) {
  ExplanationDataset ds = parse_dataset_text(zoo_tbox_json());
  return CostModel(build_tbox_graph(ds), std::move(overrides));
}

}  // namespace semcf::fixtures
