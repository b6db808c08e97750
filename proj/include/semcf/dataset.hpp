#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace semcf {

/// Name of the flag concept marking classifier-mappable individuals.
/// Assertions of it are synthesized by the loader from the exemplars list.
inline constexpr const char* kExemplarConcept = "Exemplar";

enum class SymbolKind { concept_name, role_name };

struct Vocabulary {
  std::set<std::string> concepts;
  std::set<std::string> roles;
  std::set<std::string> individuals;

  bool operator==(const Vocabulary&) const = default;
};

struct SubsumptionAxiom {
  std::string sub;
  std::string sup;
  SymbolKind kind = SymbolKind::concept_name;

  auto tie() const { return std::tie(kind, sub, sup); }
  friend bool operator==(const SubsumptionAxiom& a, const SubsumptionAxiom& b) {
    return a.tie() == b.tie();
  }
  friend bool operator<(const SubsumptionAxiom& a, const SubsumptionAxiom& b) {
    return a.tie() < b.tie();
  }
};

struct ConceptAssertion {
  std::string concept_name;
  std::string individual;

  auto tie() const { return std::tie(individual, concept_name); }
  friend bool operator==(const ConceptAssertion& a, const ConceptAssertion& b) {
    return a.tie() == b.tie();
  }
  friend bool operator<(const ConceptAssertion& a, const ConceptAssertion& b) {
    return a.tie() < b.tie();
  }
};

struct RoleAssertion {
  std::string role_name;
  std::string subject;
  std::string object;

  auto tie() const { return std::tie(subject, object, role_name); }
  friend bool operator==(const RoleAssertion& a, const RoleAssertion& b) {
    return a.tie() == b.tie();
  }
  friend bool operator<(const RoleAssertion& a, const RoleAssertion& b) {
    return a.tie() < b.tie();
  }
};

/// TBox axioms plus ABox assertions. Assertions are stored sorted and
/// deduplicated; Exemplar(e) assertions synthesized by the loader are
/// included.
struct KnowledgeBase {
  std::vector<SubsumptionAxiom> tbox;
  std::vector<ConceptAssertion> concept_assertions;
  std::vector<RoleAssertion> role_assertions;

  bool operator==(const KnowledgeBase&) const = default;
};

/// exemplar id -> predicted class label
using PredictionTable = std::map<std::string, std::string>;

/// The engine's whole input: vocabulary, knowledge base, exemplars and
/// one prediction table per classifier id.
struct ExplanationDataset {
  Vocabulary vocabulary;
  KnowledgeBase kb;
  std::vector<std::string> exemplars;  // ordered, unique
  std::map<std::string, PredictionTable> predictions;
  std::set<std::string> classes;
  std::vector<std::string> warnings;  // ingestion notes; not part of identity

  bool is_exemplar(const std::string& id) const;
  /// Prediction table by classifier id; throws if the id is unknown.
  const PredictionTable& table(const std::string& id) const;

  friend bool operator==(const ExplanationDataset& a,
                         const ExplanationDataset& b) {
    return a.vocabulary == b.vocabulary && a.kb == b.kb &&
           a.exemplars == b.exemplars && a.predictions == b.predictions &&
           a.classes == b.classes;
  }
};

/// Parse the dataset JSON document. Undeclared concept/role identifiers are
/// auto-declared with inferred kind and reported in `warnings`; individuals
/// are always inferred. Throws Errc::parse on malformed JSON (message
/// carries line/column) and Errc::validation on kind conflicts, reserved
/// identifiers, or unknown exemplars in prediction tables.
ExplanationDataset parse_dataset_text(const std::string& text);
ExplanationDataset parse_dataset(std::istream& in);
ExplanationDataset load_dataset_file(const std::string& path);

/// Canonical JSON serialization: sorted keys, sorted assertion lists,
/// synthesized Exemplar assertions omitted. parse(serialize(ds)) == ds, and
/// the bytes are the fingerprint input for caches.
std::string serialize_dataset(const ExplanationDataset& ds);

enum class Severity { warning, error };

struct Violation {
  Severity severity = Severity::error;
  std::string invariant;  // which rule was broken
  std::string location;   // offending identifier or axiom
};

struct ValidationReport {
  std::vector<Violation> entries;

  bool empty() const { return entries.empty(); }
  /// True when no error-severity entries are present.
  bool ok() const;
};

/// Check every dataset invariant. Violations are data, not exceptions.
ValidationReport validate_dataset(const ExplanationDataset& ds);

}  // namespace semcf
