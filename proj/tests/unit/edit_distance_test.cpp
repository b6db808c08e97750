#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "semcf/abox_graph.hpp"
#include "semcf/edit_distance.hpp"
#include "semcf/errors.hpp"

using namespace semcf;

TEST_SUITE_BEGIN("editdist");

namespace {

ConceptSetDescription describe(const ExplanationDataset& ds,
                               const std::string& exemplar) {
  ABoxGraph g = build_abox_graph(ds);
  return roll_up(exemplar_component(g, exemplar));
}

/// Random vocabulary/TBox plus two random descriptions over it.
struct RandomInstance {
  ExplanationDataset ds;
  ConceptSetDescription a, b;
};

RandomInstance random_instance(std::mt19937& rng) {
  int n_concepts = std::uniform_int_distribution(2, 10)(rng);
  int n_roles = std::uniform_int_distribution(1, 5)(rng);
  std::string json = R"({"concepts": [)";
  for (int i = 0; i < n_concepts; ++i)
    json += std::string(i ? "," : "") + "\"C" + std::to_string(i) + "\"";
  json += R"(], "roles": [)";
  for (int i = 0; i < n_roles; ++i)
    json += std::string(i ? "," : "") + "\"r" + std::to_string(i) + "\"";
  json += R"(], "tbox": [)";
  int n_axioms = std::uniform_int_distribution(0, n_concepts)(rng);
  bool first = true;
  for (int i = 0; i < n_axioms; ++i) {
    int a = std::uniform_int_distribution(0, n_concepts - 1)(rng);
    int b = std::uniform_int_distribution(0, n_concepts - 1)(rng);
    if (a == b) continue;
    if (!first) json += ",";
    first = false;
    json += R"({"sub": "C)" + std::to_string(a) + R"(", "sup": "C)" +
            std::to_string(b) + R"("})";
  }
  json += "]}";

  RandomInstance inst;
  inst.ds = parse_dataset_text(json);

  auto random_description = [&](const std::string& name) {
    ConceptSetDescription d;
    d.exemplar = name;
    int n_labels = std::uniform_int_distribution(0, 5)(rng);
    for (int l = 0; l < n_labels; ++l) {
      LabelSet label;
      label.origin = name + "_n" + std::to_string(l);
      int n_atoms = std::uniform_int_distribution(0, 6)(rng);
      for (int k = 0; k < n_atoms; ++k) {
        if (std::uniform_int_distribution(0, 2)(rng) == 0) {
          label.atoms.insert(Atom::exists(
              "r" + std::to_string(
                        std::uniform_int_distribution(0, n_roles - 1)(rng)),
              "C" + std::to_string(
                        std::uniform_int_distribution(0, n_concepts - 1)(rng))));
        } else {
          label.atoms.insert(Atom::atomic(
              "C" + std::to_string(
                        std::uniform_int_distribution(0, n_concepts - 1)(rng))));
        }
      }
      d.labels.push_back(std::move(label));
    }
    return d;
  };
  inst.a = random_description("a");
  inst.b = random_description("b");
  return inst;
}

}  // namespace

TEST_CASE("identical label sets cost nothing") {
  CostModel cm = fixtures::zoo_cost_model();
  std::set<Atom> cat = {Atom::atomic("Cat")};
  auto r = label_edit_distance(cm, cat, cat);
  CHECK(r.cost == 0);
  CHECK(r.ops.empty());
}

TEST_CASE("single substitution picks the hierarchy distance") {
  CostModel cm = fixtures::zoo_cost_model();
  auto r = label_edit_distance(cm, {Atom::atomic("Cat")},
                               {Atom::atomic("Dog")});
  CHECK(r.cost == 2);
  REQUIRE(r.ops.size() == 1);
  CHECK(r.ops[0].from == Atom::atomic("Cat"));
  CHECK(r.ops[0].to == Atom::atomic("Dog"));
}

TEST_CASE("unequal sides pad with TOP") {
  CostModel cm = fixtures::zoo_cost_model();
  auto r = label_edit_distance(
      cm, {Atom::atomic("Cat"), Atom::atomic("Ant")}, {Atom::atomic("Dog")});
  // Cat->Dog (2) plus delete Ant (3) beats Ant->Dog (4) plus delete Cat (3)
  CHECK(r.cost == 5);
  REQUIRE(r.ops.size() == 2);
  bool has_sub = false, has_del = false;
  for (const auto& op : r.ops) {
    if (op.from == Atom::atomic("Cat") && op.to == Atom::atomic("Dog"))
      has_sub = true;
    if (op.from == Atom::atomic("Ant") && op.to.is_top()) has_del = true;
  }
  CHECK(has_sub);
  CHECK(has_del);
}

TEST_CASE("toy descriptions are four apart") {
  ExplanationDataset ds = fixtures::toy_animals();
  CostModel cm(build_tbox_graph(ds));
  ConceptSetDescription d1 = describe(ds, "e1");
  ConceptSetDescription d2 = describe(ds, "e2");
  // frozen from the brute-force oracle
  CHECK(oracle::brute_force_description_cost(cm, d1, d2) == 4);

  EditPath path = description_edit_distance(cm, d1, d2);
  CHECK(path.total_cost == 4);
  REQUIRE(path.ops.size() == 2);
  bool existential = false, concept_edit = false;
  for (const auto& op : path.ops) {
    if (op.from == Atom::exists("isIn", "Forest") &&
        op.to == Atom::exists("isIn", "Bedroom"))
      existential = true;
    if (op.from == Atom::atomic("Forest") && op.to == Atom::atomic("Bedroom"))
      concept_edit = true;
  }
  CHECK(existential);
  CHECK(concept_edit);
}

TEST_CASE("an extra label costs its deletion") {
  ExplanationDataset ds = fixtures::toy_animals();
  CostModel cm(build_tbox_graph(ds));
  ConceptSetDescription d1 = describe(ds, "e1");
  ConceptSetDescription d2 = describe(ds, "e2");
  LabelSet extra;
  extra.origin = "w";
  extra.atoms = {Atom::atomic("Animal")};
  d1.labels.push_back(extra);
  EditPath path = description_edit_distance(cm, d1, d2);
  CHECK(path.total_cost == 5);
  bool deletion = false;
  for (const auto& op : path.ops)
    if (op.from == Atom::atomic("Animal") && op.to.is_top() &&
        op.site == "w")
      deletion = true;
  CHECK(deletion);
}

TEST_CASE("identical descriptions: zero cost, empty ops") {
  ExplanationDataset ds = fixtures::toy_animals();
  CostModel cm(build_tbox_graph(ds));
  ConceptSetDescription d1 = describe(ds, "e1");
  EditPath path = description_edit_distance(cm, d1, d1);
  CHECK(path.total_cost == 0);
  CHECK(path.ops.empty());
}

TEST_CASE("empty path leaves the description unchanged") {
  ExplanationDataset ds = fixtures::toy_animals();
  ConceptSetDescription d1 = describe(ds, "e1");
  EditPath empty;
  empty.source = "e1";
  empty.target = "e1";
  CHECK(descriptions_equivalent(apply_edit_path(d1, empty), d1));
}

TEST_CASE("derived path rebuilds the target description") {
  ExplanationDataset ds = fixtures::toy_animals();
  CostModel cm(build_tbox_graph(ds));
  ConceptSetDescription d1 = describe(ds, "e1");
  ConceptSetDescription d2 = describe(ds, "e2");
  EditPath path = description_edit_distance(cm, d1, d2);
  CHECK(descriptions_equivalent(apply_edit_path(d1, path), d2));
}

TEST_CASE("insertion-only path builds a description from nothing") {
  ExplanationDataset ds = fixtures::toy_animals();
  CostModel cm(build_tbox_graph(ds));
  ConceptSetDescription empty;
  empty.exemplar = "void";
  ConceptSetDescription d2 = describe(ds, "e2");
  EditPath path = description_edit_distance(cm, empty, d2);
  for (const auto& op : path.ops) CHECK(op.from.is_top());
  CHECK(descriptions_equivalent(apply_edit_path(empty, path), d2));
}

TEST_CASE("inconsistent paths are rejected") {
  ExplanationDataset ds = fixtures::toy_animals();
  ConceptSetDescription d1 = describe(ds, "e1");
  EditPath bad;
  bad.ops.push_back({Atom::atomic("Ghost"), Atom::top(), 1, "a", ""});
  CHECK_THROWS_AS(apply_edit_path(d1, bad), Error);
  EditPath bad_site;
  bad_site.ops.push_back({Atom::atomic("Forest"), Atom::top(), 1, "zz", ""});
  CHECK_THROWS_AS(apply_edit_path(d1, bad_site), Error);
}

TEST_CASE("agrees with the two-level brute force on random instances") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    RandomInstance inst = random_instance(rng);
    CostModel cm(build_tbox_graph(inst.ds));
    EditPath path = description_edit_distance(cm, inst.a, inst.b);
    double expected = oracle::brute_force_description_cost(cm, inst.a, inst.b);
    CHECK(path.total_cost == doctest::Approx(expected).epsilon(1e-9));
    // path/cost coherence on every instance
    double op_sum = 0;
    for (const auto& op : path.ops) op_sum += op.cost;
    CHECK(path.total_cost == doctest::Approx(op_sum).epsilon(1e-9));
    CHECK(descriptions_equivalent(apply_edit_path(inst.a, path), inst.b));
    // metric-like properties under override-free models
    CHECK(description_edit_distance(cm, inst.a, inst.a).total_cost == 0);
    EditPath back = description_edit_distance(cm, inst.b, inst.a);
    CHECK(back.total_cost == doctest::Approx(path.total_cost).epsilon(1e-9));
  }
}

TEST_CASE("padding both sides with the same label changes nothing") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    RandomInstance inst = random_instance(rng);
    CostModel cm(build_tbox_graph(inst.ds));
    double before = description_edit_distance(cm, inst.a, inst.b).total_cost;
    LabelSet pad;
    pad.origin = "pad";
    pad.atoms = {Atom::atomic("C0")};
    inst.a.labels.push_back(pad);
    inst.b.labels.push_back(pad);
    double after = description_edit_distance(cm, inst.a, inst.b).total_cost;
    CHECK(before == doctest::Approx(after).epsilon(1e-9));
  }
}

TEST_CASE("infinite overrides can make a pair infeasible") {
  std::vector<OverrideRule> rules = {
      {"Cat", "Dog", kInfiniteCost},   {"Cat", "TOP", kInfiniteCost},
      {"TOP", "Cat", kInfiniteCost},   {"Dog", "Cat", kInfiniteCost},
      {"TOP", "Dog", kInfiniteCost},   {"Dog", "TOP", kInfiniteCost}};
  CostModel cm = fixtures::zoo_cost_model(rules);
  CHECK_THROWS_AS(label_edit_distance(cm, {Atom::atomic("Cat")},
                                      {Atom::atomic("Dog")}),
                  InfeasibleError);
}

TEST_CASE("reversal mirrors a path site by site") {
  ExplanationDataset ds = fixtures::toy_animals();
  CostModel cm(build_tbox_graph(ds));
  ConceptSetDescription d1 = describe(ds, "e1");
  ConceptSetDescription d2 = describe(ds, "e2");
  EditPath path = description_edit_distance(cm, d1, d2);
  EditPath rev = reverse_path(path);
  CHECK(rev.source == "e2");
  CHECK(rev.total_cost == path.total_cost);
  CHECK(descriptions_equivalent(apply_edit_path(d2, rev), d1));
}

TEST_SUITE_END();
