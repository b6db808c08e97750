#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semcf/cost_model.hpp"
#include "semcf/dataset.hpp"
#include "semcf/edit_distance.hpp"
#include "semcf/ged.hpp"
#include "semcf/rollup.hpp"

namespace semcf {

inline constexpr int kCacheVersion = 1;

struct CacheOptions {
  std::string backend = "set";  // "set" or "graph"
  int jobs = 1;
  RollupOptions rollup;
  GedBudget ged_budget;
  std::function<void(size_t done, size_t total)> progress;  // optional
};

/// All pairwise edit distances and paths over a dataset's exemplars.
/// Immutable once preprocessed; queries are concurrent and count their
/// matrix lookups so callers can verify nothing is recomputed.
class DistanceCache {
 public:
  std::string dataset_sha256;
  std::string costs_sha256;
  std::string backend = "set";
  bool symmetric = true;
  std::string created_utc;

  DistanceCache() = default;
  DistanceCache(DistanceCache&& other) noexcept { *this = std::move(other); }
  DistanceCache& operator=(DistanceCache&& other) noexcept {
    dataset_sha256 = std::move(other.dataset_sha256);
    costs_sha256 = std::move(other.costs_sha256);
    backend = std::move(other.backend);
    symmetric = other.symmetric;
    created_utc = std::move(other.created_utc);
    exemplars_ = std::move(other.exemplars_);
    matrix_ = std::move(other.matrix_);
    paths_ = std::move(other.paths_);
    lookups_.store(other.lookups_.load());
    return *this;
  }

  const std::vector<std::string>& exemplars() const { return exemplars_; }
  size_t size() const { return exemplars_.size(); }
  std::optional<size_t> index_of(const std::string& exemplar) const;

  double cost_at(size_t i, size_t j) const;
  /// Stored path i -> j, or nullptr when the pair is infeasible. For
  /// symmetric caches only i < j is stored; ask for the direction you need
  /// via path_between.
  const EditPath* stored_path(size_t i, size_t j) const;
  /// Path from exemplar i to exemplar j, reversing the stored direction
  /// when the cache is symmetric. Empty optional when infeasible.
  std::optional<EditPath> path_between(size_t i, size_t j) const;

  uint64_t lookup_count() const { return lookups_.load(); }
  void reset_lookup_count() const { lookups_.store(0); }

 private:
  friend DistanceCache preprocess(const ExplanationDataset&, const CostModel&,
                                  const CacheOptions&, const std::string&);
  friend void save_cache(const DistanceCache&, std::ostream&);
  friend DistanceCache load_cache(std::istream&, const ExplanationDataset&,
                                  const std::string&);

  std::vector<std::string> exemplars_;
  std::vector<double> matrix_;  // row-major size() x size()
  std::map<std::pair<size_t, size_t>, EditPath> paths_;
  mutable std::atomic<uint64_t> lookups_{0};
};

/// Compute every exemplar pair with the requested backend. Deterministic
/// for any worker count: pairs are statically chunked and written to
/// preassigned slots. Infeasible pairs store an infinite cost and no path;
/// graph-backend budget errors abort naming the offending pair.
DistanceCache preprocess(const ExplanationDataset& ds, const CostModel& cm,
                         const CacheOptions& options,
                         const std::string& costs_fingerprint);

/// Cache file: one JSON manifest line, one exemplars line, the matrix rows,
/// then one record line per stored path.
void save_cache(const DistanceCache& cache, std::ostream& out);
void save_cache_file(const DistanceCache& cache, const std::string& path);

/// Load and verify: version must be supported and both fingerprints must
/// match the dataset and cost config in hand.
DistanceCache load_cache(std::istream& in, const ExplanationDataset& ds,
                         const std::string& costs_fingerprint);
DistanceCache load_cache_file(const std::string& path,
                              const ExplanationDataset& ds,
                              const std::string& costs_fingerprint);

/// Manifest of a cache file without fingerprint checks (for inspection).
std::string read_cache_manifest(std::istream& in);

struct NearestResult {
  std::vector<std::pair<std::string, double>> hits;  // sorted (cost, id)
  std::string status;  // non-empty explanation when hits is empty
};

/// The k nearest exemplars of `target_class` by cached distance, excluding
/// the source itself; one linear scan of the source's row.
NearestResult nearest_by_class(const DistanceCache& cache,
                               const ExplanationDataset& ds,
                               const std::string& source,
                               const std::string& target_class, size_t k,
                               const std::string& table_id = "default");

/// Fingerprint helpers shared by preprocess and the CLI.
std::string dataset_fingerprint(const ExplanationDataset& ds);
std::string costs_fingerprint(const std::vector<OverrideRule>& rules);

}  // namespace semcf
