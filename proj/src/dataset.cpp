#include "semcf/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include "json.hpp"
#include "semcf/atom.hpp"
#include "semcf/errors.hpp"

namespace semcf {

using nlohmann::json;

bool ExplanationDataset::is_exemplar(const std::string& id) const {
  return std::find(exemplars.begin(), exemplars.end(), id) != exemplars.end();
}

const PredictionTable& ExplanationDataset::table(const std::string& id) const {
  auto it = predictions.find(id);
  if (it == predictions.end())
    throw Error(Errc::validation, "unknown prediction table '" + id + "'");
  return it->second;
}

bool ValidationReport::ok() const {
  return std::none_of(entries.begin(), entries.end(), [](const Violation& v) {
    return v.severity == Severity::error;
  });
}

namespace {

std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Collects declarations while parsing and resolves kinds, warning about
/// identifiers that were never declared up front.
struct SymbolScope {
  ExplanationDataset& ds;
  std::set<std::string> declared_concepts;
  std::set<std::string> declared_roles;
  std::set<std::string> warned;

  void check_name(const std::string& id, const std::string& where) {
    if (id.empty())
      throw Error(Errc::validation, "empty identifier in " + where);
    if (id == kTopName)
      throw Error(Errc::validation,
                  "reserved identifier TOP used in " + where);
  }

  void conflict(const std::string& id, const std::string& as_kind) {
    throw Error(Errc::validation, "kind conflict: '" + id + "' already " +
                                      "declared and now used as " + as_kind);
  }

  void warn_inferred(const std::string& id, const std::string& kind) {
    if (warned.insert(id).second)
      ds.warnings.push_back("undeclared " + kind + " '" + id +
                            "' auto-declared");
  }

  void use_concept(const std::string& id, const std::string& where,
                   bool declared_up_front) {
    check_name(id, where);
    if (ds.vocabulary.roles.count(id)) conflict(id, "a concept");
    if (ds.vocabulary.individuals.count(id)) conflict(id, "a concept");
    if (ds.vocabulary.concepts.insert(id).second && !declared_up_front &&
        id != kExemplarConcept)
      warn_inferred(id, "concept");
  }

  void use_role(const std::string& id, const std::string& where,
                bool declared_up_front) {
    check_name(id, where);
    if (ds.vocabulary.concepts.count(id)) conflict(id, "a role");
    if (ds.vocabulary.individuals.count(id)) conflict(id, "a role");
    if (ds.vocabulary.roles.insert(id).second && !declared_up_front)
      warn_inferred(id, "role");
  }

  void use_individual(const std::string& id, const std::string& where) {
    check_name(id, where);
    if (ds.vocabulary.concepts.count(id)) conflict(id, "an individual");
    if (ds.vocabulary.roles.count(id)) conflict(id, "an individual");
    ds.vocabulary.individuals.insert(id);
  }
};

std::string require_string(const json& j, const std::string& what) {
  if (!j.is_string())
    throw Error(Errc::parse, what + " must be a string");
  return j.get<std::string>();
}

const json* opt_member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void warn_unknown_keys(const json& obj, const std::set<std::string>& known,
                       const std::string& where,
                       std::vector<std::string>& warnings) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key()))
      warnings.push_back("unknown key '" + it.key() + "' in " + where +
                         " ignored");
  }
}

}  // namespace

ExplanationDataset parse_dataset_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(Errc::parse, "malformed JSON at line " + std::to_string(line) +
                                 ", column " + std::to_string(col) + ": " +
                                 e.what());
  }
  if (!doc.is_object())
    throw Error(Errc::parse, "dataset document must be a JSON object");

  ExplanationDataset ds;
  SymbolScope scope{ds, {}, {}, {}};

  warn_unknown_keys(doc,
                    {"concepts", "roles", "classes", "tbox", "abox",
                     "exemplars", "predictions"},
                    "dataset", ds.warnings);

  if (const json* j = opt_member(doc, "concepts")) {
    if (!j->is_array()) throw Error(Errc::parse, "'concepts' must be an array");
    for (const auto& c : *j)
      scope.use_concept(require_string(c, "concept name"), "concepts", true);
  }
  if (const json* j = opt_member(doc, "roles")) {
    if (!j->is_array()) throw Error(Errc::parse, "'roles' must be an array");
    for (const auto& r : *j)
      scope.use_role(require_string(r, "role name"), "roles", true);
  }
  scope.declared_concepts = ds.vocabulary.concepts;
  scope.declared_roles = ds.vocabulary.roles;

  if (const json* j = opt_member(doc, "classes")) {
    if (!j->is_array()) throw Error(Errc::parse, "'classes' must be an array");
    for (const auto& c : *j) {
      std::string label = require_string(c, "class label");
      scope.check_name(label, "classes");
      ds.classes.insert(label);
    }
  }

  if (const json* j = opt_member(doc, "tbox")) {
    if (!j->is_array()) throw Error(Errc::parse, "'tbox' must be an array");
    for (const auto& ax : *j) {
      if (!ax.is_object())
        throw Error(Errc::parse, "tbox axiom must be an object");
      warn_unknown_keys(ax, {"sub", "sup", "kind"}, "tbox axiom", ds.warnings);
      const json* sub = opt_member(ax, "sub");
      const json* sup = opt_member(ax, "sup");
      if (!sub || !sup)
        throw Error(Errc::parse, "tbox axiom needs 'sub' and 'sup'");
      std::string kind_str = "concept";
      if (const json* k = opt_member(ax, "kind"))
        kind_str = require_string(*k, "axiom kind");
      SubsumptionAxiom axiom;
      axiom.sub = require_string(*sub, "axiom sub");
      axiom.sup = require_string(*sup, "axiom sup");
      if (kind_str == "concept") {
        axiom.kind = SymbolKind::concept_name;
        scope.use_concept(axiom.sub, "tbox",
                          scope.declared_concepts.count(axiom.sub) > 0);
        scope.use_concept(axiom.sup, "tbox",
                          scope.declared_concepts.count(axiom.sup) > 0);
      } else if (kind_str == "role") {
        axiom.kind = SymbolKind::role_name;
        scope.use_role(axiom.sub, "tbox",
                       scope.declared_roles.count(axiom.sub) > 0);
        scope.use_role(axiom.sup, "tbox",
                       scope.declared_roles.count(axiom.sup) > 0);
      } else {
        throw Error(Errc::parse,
                    "axiom kind must be 'concept' or 'role', got '" +
                        kind_str + "'");
      }
      ds.kb.tbox.push_back(std::move(axiom));
    }
  }

  if (const json* j = opt_member(doc, "abox")) {
    if (!j->is_object()) throw Error(Errc::parse, "'abox' must be an object");
    warn_unknown_keys(*j, {"concept_assertions", "role_assertions"}, "abox",
                      ds.warnings);
    if (const json* ca = opt_member(*j, "concept_assertions")) {
      if (!ca->is_array())
        throw Error(Errc::parse, "'concept_assertions' must be an array");
      for (const auto& a : *ca) {
        if (!a.is_object())
          throw Error(Errc::parse, "concept assertion must be an object");
        warn_unknown_keys(a, {"concept", "individual"}, "concept assertion",
                          ds.warnings);
        const json* c = opt_member(a, "concept");
        const json* ind = opt_member(a, "individual");
        if (!c || !ind)
          throw Error(Errc::parse,
                      "concept assertion needs 'concept' and 'individual'");
        ConceptAssertion assertion;
        assertion.concept_name = require_string(*c, "assertion concept");
        assertion.individual = require_string(*ind, "assertion individual");
        scope.use_concept(assertion.concept_name, "abox",
                          scope.declared_concepts.count(
                              assertion.concept_name) > 0);
        scope.use_individual(assertion.individual, "abox");
        ds.kb.concept_assertions.push_back(std::move(assertion));
      }
    }
    if (const json* ra = opt_member(*j, "role_assertions")) {
      if (!ra->is_array())
        throw Error(Errc::parse, "'role_assertions' must be an array");
      for (const auto& a : *ra) {
        if (!a.is_object())
          throw Error(Errc::parse, "role assertion must be an object");
        warn_unknown_keys(a, {"role", "subject", "object"}, "role assertion",
                          ds.warnings);
        const json* r = opt_member(a, "role");
        const json* s = opt_member(a, "subject");
        const json* o = opt_member(a, "object");
        if (!r || !s || !o)
          throw Error(Errc::parse,
                      "role assertion needs 'role', 'subject' and 'object'");
        RoleAssertion assertion;
        assertion.role_name = require_string(*r, "assertion role");
        assertion.subject = require_string(*s, "assertion subject");
        assertion.object = require_string(*o, "assertion object");
        scope.use_role(assertion.role_name, "abox",
                       scope.declared_roles.count(assertion.role_name) > 0);
        scope.use_individual(assertion.subject, "abox");
        scope.use_individual(assertion.object, "abox");
        ds.kb.role_assertions.push_back(std::move(assertion));
      }
    }
  }

  if (const json* j = opt_member(doc, "exemplars")) {
    if (!j->is_array())
      throw Error(Errc::parse, "'exemplars' must be an array");
    for (const auto& e : *j) {
      std::string id = require_string(e, "exemplar id");
      scope.use_individual(id, "exemplars");
      if (ds.is_exemplar(id))
        ds.warnings.push_back("duplicate exemplar '" + id + "' ignored");
      else
        ds.exemplars.push_back(id);
    }
  }

  // The Exemplar flag concept and its assertions are implied by the
  // exemplars list.
  if (!ds.exemplars.empty() || ds.vocabulary.concepts.count(kExemplarConcept))
    scope.use_concept(kExemplarConcept, "exemplars", true);
  for (const auto& e : ds.exemplars)
    ds.kb.concept_assertions.push_back({kExemplarConcept, e});

  if (const json* j = opt_member(doc, "predictions")) {
    if (!j->is_object())
      throw Error(Errc::parse, "'predictions' must be an object of tables");
    for (auto it = j->begin(); it != j->end(); ++it) {
      if (!it.value().is_object())
        throw Error(Errc::parse, "prediction table '" + it.key() +
                                     "' must be an object");
      PredictionTable table;
      for (auto p = it.value().begin(); p != it.value().end(); ++p) {
        if (!ds.is_exemplar(p.key()))
          throw Error(Errc::validation, "prediction table '" + it.key() +
                                            "' names unknown exemplar '" +
                                            p.key() + "'");
        std::string label = require_string(p.value(), "prediction value");
        scope.check_name(label, "predictions");
        if (ds.classes.insert(label).second)
          ds.warnings.push_back("class '" + label +
                                "' inferred from predictions");
        table[p.key()] = std::move(label);
      }
      ds.predictions[it.key()] = std::move(table);
    }
  }

  // normalize: sorted, deduplicated axiom and assertion lists
  auto normalize = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(ds.kb.tbox);
  normalize(ds.kb.concept_assertions);
  normalize(ds.kb.role_assertions);
  return ds;
}

ExplanationDataset parse_dataset(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_text(buf.str());
}

ExplanationDataset load_dataset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open dataset file '" + path + "'");
  return parse_dataset(in);
}

std::string serialize_dataset(const ExplanationDataset& ds) {
  json doc;
  json concepts = json::array();
  for (const auto& c : ds.vocabulary.concepts)
    if (c != kExemplarConcept) concepts.push_back(c);
  doc["concepts"] = std::move(concepts);
  doc["roles"] = ds.vocabulary.roles;
  doc["classes"] = ds.classes;

  json tbox = json::array();
  for (const auto& ax : ds.kb.tbox)
    tbox.push_back({{"sub", ax.sub},
                    {"sup", ax.sup},
                    {"kind", ax.kind == SymbolKind::concept_name ? "concept"
                                                                 : "role"}});
  doc["tbox"] = std::move(tbox);

  json cas = json::array();
  for (const auto& a : ds.kb.concept_assertions) {
    // synthesized flags are implied by the exemplars array
    if (a.concept_name == kExemplarConcept && ds.is_exemplar(a.individual))
      continue;
    cas.push_back({{"concept", a.concept_name}, {"individual", a.individual}});
  }
  json ras = json::array();
  for (const auto& a : ds.kb.role_assertions)
    ras.push_back(
        {{"role", a.role_name}, {"subject", a.subject}, {"object", a.object}});
  doc["abox"] = {{"concept_assertions", std::move(cas)},
                 {"role_assertions", std::move(ras)}};

  doc["exemplars"] = ds.exemplars;
  json tables = json::object();
  for (const auto& [id, table] : ds.predictions) tables[id] = table;
  doc["predictions"] = std::move(tables);
  return doc.dump();
}

namespace {

void check_class_occurrences(const ExplanationDataset& ds,
                             ValidationReport& report) {
  for (const auto& cls : ds.classes) {
    std::vector<std::string> uses;
    for (const auto& ax : ds.kb.tbox)
      if (ax.sub == cls || ax.sup == cls) uses.push_back("tbox axiom");
    for (const auto& a : ds.kb.concept_assertions)
      if (a.concept_name == cls || a.individual == cls)
        uses.push_back("concept assertion");
    for (const auto& a : ds.kb.role_assertions)
      if (a.role_name == cls || a.subject == cls || a.object == cls)
        uses.push_back("role assertion");
    if (!uses.empty()) {
      report.entries.push_back({Severity::error,
                                "class occurs in KB",
                                "class '" + cls + "' used in " + uses.front()});
    } else if (ds.vocabulary.concepts.count(cls) ||
               ds.vocabulary.roles.count(cls)) {
      report.entries.push_back(
          {Severity::warning, "class declared in vocabulary",
           "class '" + cls + "' is also a declared atom (unused in KB)"});
    }
  }
}

void check_tbox_cycles(const ExplanationDataset& ds, ValidationReport& report) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& ax : ds.kb.tbox) succ[ax.sub].push_back(ax.sup);
  std::map<std::string, int> state;  // 0 unseen, 1 on stack, 2 done
  std::set<std::string> cyclic;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    state[n] = 1;
    for (const auto& m : succ[n]) {
      if (state[m] == 1)
        cyclic.insert(m);
      else if (state[m] == 0)
        visit(m);
    }
    state[n] = 2;
  };
  for (const auto& [n, _] : succ)
    if (state[n] == 0) visit(n);
  for (const auto& n : cyclic)
    report.entries.push_back({Severity::warning, "TBox cycle",
                              "subsumption cycle through '" + n + "'"});
}

}  // namespace

ValidationReport validate_dataset(const ExplanationDataset& ds) {
  ValidationReport report;
  const auto& voc = ds.vocabulary;

  // vocabulary: disjointness, no TOP, no empty names
  auto check_set = [&](const std::set<std::string>& s, const char* kind) {
    for (const auto& id : s) {
      if (id.empty())
        report.entries.push_back(
            {Severity::error, "empty identifier", std::string(kind)});
      if (id == kTopName)
        report.entries.push_back({Severity::error, "reserved identifier TOP",
                                  std::string(kind)});
    }
  };
  check_set(voc.concepts, "concepts");
  check_set(voc.roles, "roles");
  check_set(voc.individuals, "individuals");
  for (const auto& id : voc.concepts) {
    if (voc.roles.count(id))
      report.entries.push_back(
          {Severity::error, "vocabulary sets not disjoint", id});
    if (voc.individuals.count(id))
      report.entries.push_back(
          {Severity::error, "vocabulary sets not disjoint", id});
  }
  for (const auto& id : voc.roles)
    if (voc.individuals.count(id))
      report.entries.push_back(
          {Severity::error, "vocabulary sets not disjoint", id});

  // axioms and assertions reference declared identifiers of matching kind
  for (const auto& ax : ds.kb.tbox) {
    const auto& pool = ax.kind == SymbolKind::concept_name ? voc.concepts
                                                           : voc.roles;
    if (!pool.count(ax.sub) || !pool.count(ax.sup))
      report.entries.push_back({Severity::error,
                                "axiom uses undeclared identifier",
                                ax.sub + " subsumed-by " + ax.sup});
    if (ax.sub == kExemplarConcept || ax.sup == kExemplarConcept)
      report.entries.push_back({Severity::error, "Exemplar occurs in TBox",
                                ax.sub + " subsumed-by " + ax.sup});
    if (ds.is_exemplar(ax.sub) || ds.is_exemplar(ax.sup))
      report.entries.push_back({Severity::error, "exemplar occurs in TBox",
                                ax.sub + " subsumed-by " + ax.sup});
  }
  for (const auto& a : ds.kb.concept_assertions) {
    if (!voc.concepts.count(a.concept_name) ||
        !voc.individuals.count(a.individual))
      report.entries.push_back({Severity::error,
                                "assertion uses undeclared identifier",
                                a.concept_name + "(" + a.individual + ")"});
    if (a.concept_name == kExemplarConcept && !ds.is_exemplar(a.individual))
      report.entries.push_back(
          {Severity::error, "Exemplar asserted for non-exemplar",
           a.concept_name + "(" + a.individual + ")"});
  }
  for (const auto& a : ds.kb.role_assertions) {
    if (!voc.roles.count(a.role_name) || !voc.individuals.count(a.subject) ||
        !voc.individuals.count(a.object))
      report.entries.push_back(
          {Severity::error, "assertion uses undeclared identifier",
           a.role_name + "(" + a.subject + "," + a.object + ")"});
  }

  // exemplars and predictions
  std::set<std::string> seen_exemplars;
  for (const auto& e : ds.exemplars) {
    if (!voc.individuals.count(e))
      report.entries.push_back(
          {Severity::error, "exemplar not an individual", e});
    if (!seen_exemplars.insert(e).second)
      report.entries.push_back({Severity::error, "duplicate exemplar", e});
  }
  if (ds.predictions.empty() && !ds.exemplars.empty())
    report.entries.push_back(
        {Severity::warning, "no prediction tables", "dataset"});
  for (const auto& [table_id, table] : ds.predictions) {
    for (const auto& e : ds.exemplars)
      if (!table.count(e))
        report.entries.push_back({Severity::error,
                                  "exemplar missing prediction",
                                  "'" + e + "' in table '" + table_id + "'"});
    for (const auto& [e, cls] : table) {
      if (!ds.is_exemplar(e))
        report.entries.push_back({Severity::error,
                                  "prediction for unknown exemplar",
                                  "'" + e + "' in table '" + table_id + "'"});
      if (!ds.classes.count(cls))
        report.entries.push_back({Severity::error,
                                  "prediction value not a class",
                                  "'" + cls + "' in table '" + table_id + "'"});
    }
  }

  check_class_occurrences(ds, report);
  check_tbox_cycles(ds, report);
  return report;
}

}  // namespace semcf
