#include "semcf/distance_cache.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "semcf/errors.hpp"
#include "semcf/sha256.hpp"

namespace semcf {

using nlohmann::json;

namespace {

std::string now_utc() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json cost_to_json(double c) {
  if (c == kInfiniteCost) return "inf";
  return c;
}

double cost_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfiniteCost;
    throw Error(Errc::io, "bad cost value in cache");
  }
  return j.get<double>();
}

}  // namespace

std::string dataset_fingerprint(const ExplanationDataset& ds) {
  return sha256_hex(serialize_dataset(ds));
}

std::string costs_fingerprint(const std::vector<OverrideRule>& rules) {
  return sha256_hex(serialize_overrides(rules));
}

std::optional<size_t> DistanceCache::index_of(const std::string& exemplar) const {
  auto it = std::find(exemplars_.begin(), exemplars_.end(), exemplar);
  if (it == exemplars_.end()) return std::nullopt;
  return size_t(it - exemplars_.begin());
}

double DistanceCache::cost_at(size_t i, size_t j) const {
  lookups_.fetch_add(1, std::memory_order_relaxed);
  return matrix_[i * size() + j];
}

const EditPath* DistanceCache::stored_path(size_t i, size_t j) const {
  auto it = paths_.find({i, j});
  return it == paths_.end() ? nullptr : &it->second;
}

std::optional<EditPath> DistanceCache::path_between(size_t i, size_t j) const {
  if (i == j) return EditPath{exemplars_[i], exemplars_[j], {}, 0};
  if (const EditPath* p = stored_path(i, j)) return *p;
  if (symmetric) {
    if (const EditPath* p = stored_path(j, i)) return reverse_path(*p);
  }
  return std::nullopt;
}

DistanceCache preprocess(const ExplanationDataset& ds, const CostModel& cm,
                         const CacheOptions& options,
                         const std::string& costs_fp) {
  if (options.backend != "set" && options.backend != "graph")
    throw Error(Errc::validation,
                "backend must be 'set' or 'graph', got '" + options.backend +
                    "'");
  DistanceCache cache;
  cache.dataset_sha256 = dataset_fingerprint(ds);
  cache.costs_sha256 = costs_fp;
  cache.backend = options.backend;
  cache.symmetric = cm.overrides_symmetric();
  cache.created_utc = now_utc();
  cache.exemplars_ = ds.exemplars;

  size_t n = cache.exemplars_.size();
  cache.matrix_.assign(n * n, 0);
  if (n == 0) return cache;

  ABoxGraph abox = build_abox_graph(ds);
  std::vector<ABoxComponent> components;
  components.reserve(n);
  for (const auto& e : cache.exemplars_)
    components.push_back(exemplar_component(abox, e));

  std::vector<ConceptSetDescription> descriptions;
  if (options.backend == "set") {
    descriptions.reserve(n);
    for (const auto& comp : components)
      descriptions.push_back(roll_up(comp, options.rollup));
  } else {
    for (size_t i = 0; i < n; ++i)
      if (int(components[i].nodes.size()) > options.ged_budget.max_nodes)
        throw Error(Errc::budget_exceeded,
                    "component of exemplar '" + cache.exemplars_[i] +
                        "' exceeds the node budget of " +
                        std::to_string(options.ged_budget.max_nodes));
  }

  struct PairResult {
    double forward = 0, backward = 0;
    std::optional<EditPath> forward_path, backward_path;
  };
  std::vector<std::pair<size_t, size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<PairResult> results(pairs.size());

  const bool symmetric = cache.symmetric;
  std::atomic<size_t> done{0};
  std::mutex progress_mu;
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto flatten_ged = [&](const GedResult& ged, size_t i, size_t j) {
    EditPath path;
    path.source = cache.exemplars_[i];
    path.target = cache.exemplars_[j];
    path.total_cost = ged.cost;
    for (const auto& op : ged.ops) {
      switch (op.kind) {
        case GraphOpKind::node_substitute: {
          auto inner = label_edit_distance(
              cm, concept_label_atoms(components[i], op.a_node),
              concept_label_atoms(components[j], op.b_node));
          for (EditOp e : inner.ops) {
            e.site = op.a_node;
            e.target_site = op.b_node;
            path.ops.push_back(std::move(e));
          }
          break;
        }
        case GraphOpKind::node_delete:
          for (const auto& atom :
               concept_label_atoms(components[i], op.a_node))
            path.ops.push_back({atom, Atom::top(),
                                cm.edit_cost(atom, Atom::top()), op.a_node,
                                {}});
          break;
        case GraphOpKind::node_insert:
          for (const auto& atom :
               concept_label_atoms(components[j], op.b_node))
            path.ops.push_back({Atom::top(), atom,
                                cm.edit_cost(Atom::top(), atom), {},
                                op.b_node});
          break;
        case GraphOpKind::edge_substitute: {
          auto inner = label_edit_distance(
              cm, role_label_atoms(components[i], op.a_node, op.a_node2),
              role_label_atoms(components[j], op.b_node, op.b_node2));
          for (EditOp e : inner.ops) {
            e.site = op.a_node + "->" + op.a_node2;
            e.target_site = op.b_node + "->" + op.b_node2;
            path.ops.push_back(std::move(e));
          }
          break;
        }
        case GraphOpKind::edge_delete:
          for (const auto& atom :
               role_label_atoms(components[i], op.a_node, op.a_node2))
            path.ops.push_back({atom, Atom::top(),
                                cm.edit_cost(atom, Atom::top()),
                                op.a_node + "->" + op.a_node2, {}});
          break;
        case GraphOpKind::edge_insert:
          for (const auto& atom :
               role_label_atoms(components[j], op.b_node, op.b_node2))
            path.ops.push_back({Atom::top(), atom,
                                cm.edit_cost(Atom::top(), atom), {},
                                op.b_node + "->" + op.b_node2});
          break;
      }
    }
    return path;
  };

  auto compute_pair = [&](size_t idx) {
    auto [i, j] = pairs[idx];
    PairResult& r = results[idx];
    auto one_direction = [&](size_t from, size_t to, double& cost,
                             std::optional<EditPath>& path) {
      if (options.backend == "set") {
        try {
          EditPath p =
              description_edit_distance(cm, descriptions[from],
                                        descriptions[to]);
          cost = p.total_cost;
          path = std::move(p);
        } catch (const InfeasibleError&) {
          cost = kInfiniteCost;
          path.reset();
        }
      } else {
        try {
          GedResult ged = exact_ged(cm, components[from], components[to],
                                    options.ged_budget);
          cost = ged.cost;
          path = flatten_ged(ged, from, to);
        } catch (const InfeasibleError&) {
          cost = kInfiniteCost;
          path.reset();
        } catch (const Error& e) {
          if (e.code() == Errc::budget_exceeded)
            throw Error(Errc::budget_exceeded,
                        std::string(e.what()) + " [pair (" +
                            cache.exemplars_[from] + ", " +
                            cache.exemplars_[to] + ")]");
          throw;
        }
      }
    };
    one_direction(i, j, r.forward, r.forward_path);
    if (!symmetric) one_direction(j, i, r.backward, r.backward_path);
    size_t d = done.fetch_add(1) + 1;
    if (options.progress) {
      std::lock_guard lock(progress_mu);
      options.progress(d, pairs.size());
    }
  };

  int jobs = std::max(1, options.jobs);
  if (jobs == 1 || pairs.size() < 2) {
    for (size_t idx = 0; idx < pairs.size(); ++idx) compute_pair(idx);
  } else {
    // static chunking of the pair list keeps results reproducible
    size_t workers = std::min<size_t>(jobs, pairs.size());
    size_t chunk = (pairs.size() + workers - 1) / workers;
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; ++w) {
      size_t begin = w * chunk;
      size_t end = std::min(pairs.size(), begin + chunk);
      threads.emplace_back([&, begin, end] {
        try {
          for (size_t idx = begin; idx < end; ++idx) compute_pair(idx);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (size_t idx = 0; idx < pairs.size(); ++idx) {
    auto [i, j] = pairs[idx];
    PairResult& r = results[idx];
    cache.matrix_[i * n + j] = r.forward;
    cache.matrix_[j * n + i] = symmetric ? r.forward : r.backward;
    if (r.forward_path) cache.paths_[{i, j}] = std::move(*r.forward_path);
    if (!symmetric && r.backward_path)
      cache.paths_[{j, i}] = std::move(*r.backward_path);
  }
  return cache;
}

void save_cache(const DistanceCache& cache, std::ostream& out) {
  json manifest = {{"version", kCacheVersion},
                   {"dataset_sha256", cache.dataset_sha256},
                   {"costs_sha256", cache.costs_sha256},
                   {"backend", cache.backend},
                   {"symmetric", cache.symmetric},
                   {"n_exemplars", cache.exemplars_.size()},
                   {"created_utc", cache.created_utc}};
  out << manifest.dump() << '\n';
  out << json(cache.exemplars_).dump() << '\n';
  size_t n = cache.exemplars_.size();
  for (size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (size_t j = 0; j < n; ++j)
      row.push_back(cost_to_json(cache.matrix_[i * n + j]));
    out << row.dump() << '\n';
  }
  for (const auto& [key, path] : cache.paths_) {
    json ops = json::array();
    for (const auto& op : path.ops)
      ops.push_back({op.from.encode(), op.to.encode(), cost_to_json(op.cost),
                     op.site, op.target_site});
    json record = {{"i", key.first}, {"j", key.second}, {"ops", ops}};
    out << record.dump() << '\n';
  }
}

void save_cache_file(const DistanceCache& cache, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write cache file '" + path + "'");
  save_cache(cache, out);
}

std::string read_cache_manifest(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(Errc::io, "empty cache file");
  return line;
}

DistanceCache load_cache(std::istream& in, const ExplanationDataset& ds,
                         const std::string& costs_fp) {
  std::string line = read_cache_manifest(in);
  json manifest;
  try {
    manifest = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(Errc::io, std::string("bad cache manifest: ") + e.what());
  }
  int version = manifest.value("version", -1);
  if (version != kCacheVersion)
    throw Error(Errc::unsupported_version,
                "cache version " + std::to_string(version) +
                    " is not supported (expected " +
                    std::to_string(kCacheVersion) + ")");

  DistanceCache cache;
  cache.dataset_sha256 = manifest.value("dataset_sha256", "");
  cache.costs_sha256 = manifest.value("costs_sha256", "");
  cache.backend = manifest.value("backend", "set");
  cache.symmetric = manifest.value("symmetric", true);
  cache.created_utc = manifest.value("created_utc", "");

  if (cache.dataset_sha256 != dataset_fingerprint(ds))
    throw Error(Errc::stale_cache,
                "cache was built from a different dataset; re-run preprocess");
  if (cache.costs_sha256 != costs_fp)
    throw Error(Errc::stale_cache,
                "cache was built with a different cost config; re-run "
                "preprocess");

  if (!std::getline(in, line)) throw Error(Errc::io, "truncated cache file");
  json exemplars = json::parse(line, nullptr, false);
  if (exemplars.is_discarded() || !exemplars.is_array())
    throw Error(Errc::io, "bad exemplar list in cache");
  cache.exemplars_ = exemplars.get<std::vector<std::string>>();
  size_t n = cache.exemplars_.size();
  if (n != size_t(manifest.value("n_exemplars", -1)))
    throw Error(Errc::io, "cache manifest disagrees with exemplar list");

  cache.matrix_.assign(n * n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw Error(Errc::io, "truncated cache file");
    json row = json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_array() || row.size() != n)
      throw Error(Errc::io, "bad matrix row in cache");
    for (size_t j = 0; j < n; ++j)
      cache.matrix_[i * n + j] = cost_from_json(row[j]);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object())
      throw Error(Errc::io, "bad path record in cache");
    size_t i = record.at("i").get<size_t>();
    size_t j = record.at("j").get<size_t>();
    if (i >= n || j >= n) throw Error(Errc::io, "bad pair index in cache");
    EditPath path;
    path.source = cache.exemplars_[i];
    path.target = cache.exemplars_[j];
    for (const auto& op : record.at("ops")) {
      if (!op.is_array() || op.size() != 5)
        throw Error(Errc::io, "bad op record in cache");
      EditOp e;
      e.from = Atom::decode(op[0].get<std::string>());
      e.to = Atom::decode(op[1].get<std::string>());
      e.cost = cost_from_json(op[2]);
      e.site = op[3].get<std::string>();
      e.target_site = op[4].get<std::string>();
      path.ops.push_back(std::move(e));
      path.total_cost += path.ops.back().cost;
    }
    cache.paths_[{i, j}] = std::move(path);
  }
  return cache;
}

DistanceCache load_cache_file(const std::string& path,
                              const ExplanationDataset& ds,
                              const std::string& costs_fp) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open cache file '" + path + "'");
  return load_cache(in, ds, costs_fp);
}

NearestResult nearest_by_class(const DistanceCache& cache,
                               const ExplanationDataset& ds,
                               const std::string& source,
                               const std::string& target_class, size_t k,
                               const std::string& table_id) {
  auto src = cache.index_of(source);
  if (!src)
    throw Error(Errc::unknown_exemplar,
                "exemplar '" + source + "' is not in the cache");
  if (!ds.classes.count(target_class))
    throw Error(Errc::validation,
                "unknown target class '" + target_class + "'");
  const PredictionTable& table = ds.table(table_id);

  NearestResult result;
  std::vector<std::pair<double, std::string>> candidates;
  for (size_t j = 0; j < cache.size(); ++j) {
    if (j == *src) continue;
    auto pred = table.find(cache.exemplars()[j]);
    if (pred == table.end() || pred->second != target_class) continue;
    double cost = cache.cost_at(*src, j);
    if (cost == kInfiniteCost) continue;
    candidates.emplace_back(cost, cache.exemplars()[j]);
  }
  std::sort(candidates.begin(), candidates.end());
  if (candidates.empty()) {
    result.status = "no finite candidates";
    return result;
  }
  for (size_t i = 0; i < candidates.size() && i < k; ++i)
    result.hits.emplace_back(candidates[i].second, candidates[i].first);
  return result;
}

}  // namespace semcf
