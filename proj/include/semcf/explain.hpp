#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semcf/dataset.hpp"
#include "semcf/distance_cache.hpp"
#include "semcf/edit_distance.hpp"

namespace semcf {

/// One presented edit, optionally collapsed back to an ABox assertion
/// replacement. `kind` is "replace", "insert", "delete" for collapsed
/// assertion edits and "op" for description-level ops passed through.
struct ABoxEdit {
  std::string kind;
  Atom from;
  Atom to;
  std::string individual;  // empty for pass-through ops
  std::string text;        // rendered form
};

struct Explanation {
  std::string source;
  std::string target_class;
  std::string counterfactual;
  EditPath edits;
  std::vector<ABoxEdit> collapsed;
};

/// The k nearest target-class exemplars with their stored edit paths and
/// collapsed ABox edits.
std::vector<Explanation> counterfactual(const DistanceCache& cache,
                                        const ExplanationDataset& ds,
                                        const std::string& source,
                                        const std::string& target_class,
                                        size_t k,
                                        const std::string& table_id = "default");

/// Pair concept edits with the existential edits witnessed by the same
/// ABox individual and emit single assertion replacements; unpaired ops
/// pass through verbatim.
std::vector<ABoxEdit> collapse_to_abox_edits(const Explanation& x,
                                             const ExplanationDataset& ds);

struct ImportanceRow {
  Atom atom;
  double importance = 0;
  int64_t introduced = 0;
  int64_t removed = 0;
};

struct ImportanceReport {
  std::string target_class;
  std::vector<ImportanceRow> rows;  // sorted by |importance| descending
  size_t n_explanations = 0;
  size_t skipped = 0;  // selected exemplars with no finite candidate
};

/// Either a class label (all exemplars predicted as it) or an explicit
/// exemplar list.
struct SourceSelector {
  std::string source_class;
  std::vector<std::string> exemplars;
};

/// Net introduction rate of every atom over one minimal explanation per
/// selected exemplar: (introduced - removed) / number of explanations.
ImportanceReport global_importance(const DistanceCache& cache,
                                   const ExplanationDataset& ds,
                                   const SourceSelector& selector,
                                   const std::string& target_class,
                                   const std::string& table_id = "default");

}  // namespace semcf
