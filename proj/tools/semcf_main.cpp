#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "semcf/abox_graph.hpp"
#include "semcf/cost_model.hpp"
#include "semcf/dataset.hpp"
#include "semcf/distance_cache.hpp"
#include "semcf/edit_distance.hpp"
#include "semcf/errors.hpp"
#include "semcf/explain.hpp"
#include "semcf/ged.hpp"
#include "semcf/rollup.hpp"
#include "semcf/sha256.hpp"
#include "semcf/tbox_graph.hpp"

using nlohmann::json;
using namespace semcf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;

json cost_json(double c) {
  if (c == kInfiniteCost) return "inf";
  return c;
}

json path_json(const EditPath& p) {
  json ops = json::array();
  for (const auto& op : p.ops)
    ops.push_back({{"from", op.from.str()},
                   {"to", op.to.str()},
                   {"cost", cost_json(op.cost)},
                   {"site", op.site},
                   {"target_site", op.target_site}});
  return {{"source", p.source},
          {"target", p.target},
          {"cost", cost_json(p.total_cost)},
          {"ops", ops}};
}

json description_json(const ConceptSetDescription& d) {
  json labels = json::array();
  for (const auto& l : d.labels) {
    json atoms = json::array();
    for (const auto& a : l.atoms) atoms.push_back(a.str());
    labels.push_back({{"origin", l.origin}, {"atoms", atoms}});
  }
  return {{"exemplar", d.exemplar}, {"labels", labels}};
}

std::string default_cache_path(const std::string& dataset_path) {
  const char* dir = std::getenv("SEMCF_CACHE_DIR");
  if (!dir || !*dir) return {};
  std::ifstream in(dataset_path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::string(dir) + "/" + sha256_hex(buf.str()).substr(0, 16) +
         ".semcf-cache";
}

struct CommonArgs {
  std::string dataset_path;
  std::string overrides_path;
  bool unlabeled_filler_as_top = false;

  ExplanationDataset dataset() const {
    return load_dataset_file(dataset_path);
  }
  std::vector<OverrideRule> overrides() const {
    if (overrides_path.empty()) return {};
    return load_overrides_file(overrides_path);
  }
};

void warn_unknown_override_atoms(const ExplanationDataset& ds,
                                 const std::vector<OverrideRule>& rules) {
  auto known = [&](const std::string& text) {
    if (text == kTopName) return true;
    if (text.rfind("exists:", 0) == 0) {
      auto rest = text.substr(7);
      auto sep = rest.find(':');
      std::string role = rest.substr(0, sep);
      std::string filler = rest.substr(sep + 1);
      return ds.vocabulary.roles.count(role) > 0 &&
             (filler == kTopName || ds.vocabulary.concepts.count(filler) > 0);
    }
    return ds.vocabulary.concepts.count(text) > 0 ||
           ds.vocabulary.roles.count(text) > 0;
  };
  for (const auto& r : rules) {
    if (!known(r.from))
      std::cerr << "warning: override names unknown atom '" << r.from
                << "'\n";
    if (!known(r.to))
      std::cerr << "warning: override names unknown atom '" << r.to << "'\n";
  }
}

int cmd_validate(const std::string& path) {
  ExplanationDataset ds = load_dataset_file(path);
  for (const auto& w : ds.warnings) std::cout << "warning: " << w << "\n";
  ValidationReport report = validate_dataset(ds);
  size_t errors = 0;
  for (const auto& v : report.entries) {
    const char* sev = v.severity == Severity::error ? "violation" : "warning";
    if (v.severity == Severity::error) ++errors;
    std::cout << sev << ": " << v.invariant << " (" << v.location << ")\n";
  }
  std::cout << errors << " violations\n";
  return errors == 0 ? kExitOk : kExitViolations;
}

int cmd_describe(const CommonArgs& common, const std::string& exemplar) {
  ExplanationDataset ds = common.dataset();
  ABoxGraph graph = build_abox_graph(ds);
  ABoxComponent comp = exemplar_component(graph, exemplar);
  RollupOptions opts;
  opts.unlabeled_filler_as_top = common.unlabeled_filler_as_top;
  std::cout << description_json(roll_up(comp, opts)).dump(2) << "\n";
  return kExitOk;
}

int cmd_distance(const CommonArgs& common, const std::string& source,
                 const std::string& target, const std::string& backend,
                 bool show_path, int ged_budget, int timeout_ms) {
  ExplanationDataset ds = common.dataset();
  auto rules = common.overrides();
  warn_unknown_override_atoms(ds, rules);
  CostModel cm(build_tbox_graph(ds), rules);
  ABoxGraph graph = build_abox_graph(ds);
  ABoxComponent ca = exemplar_component(graph, source);
  ABoxComponent cb = exemplar_component(graph, target);

  if (backend == "graph") {
    GedBudget budget;
    budget.max_nodes = ged_budget;
    budget.time_limit = std::chrono::milliseconds(timeout_ms);
    GedResult ged = exact_ged(cm, ca, cb, budget);
    json out = {{"source", source},
                {"target", target},
                {"cost", cost_json(ged.cost)},
                {"optimal", ged.optimal}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }

  RollupOptions opts;
  opts.unlabeled_filler_as_top = common.unlabeled_filler_as_top;
  ConceptSetDescription da = roll_up(ca, opts);
  ConceptSetDescription db = roll_up(cb, opts);
  try {
    EditPath path = description_edit_distance(cm, da, db);
    if (show_path) {
      std::cout << path_json(path).dump(2) << "\n";
    } else {
      json out = {{"source", source},
                  {"target", target},
                  {"cost", cost_json(path.total_cost)}};
      std::cout << out.dump(2) << "\n";
    }
  } catch (const InfeasibleError&) {
    json out = {{"source", source}, {"target", target}, {"cost", "inf"}};
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_preprocess(const CommonArgs& common, const std::string& out_path,
                   const std::string& backend, int jobs, int ged_budget,
                   bool show_progress) {
  ExplanationDataset ds = common.dataset();
  auto rules = common.overrides();
  warn_unknown_override_atoms(ds, rules);
  CostModel cm(build_tbox_graph(ds), rules);
  CacheOptions options;
  options.backend = backend;
  options.jobs = jobs;
  options.rollup.unlabeled_filler_as_top = common.unlabeled_filler_as_top;
  options.ged_budget.max_nodes = ged_budget;
  if (show_progress)
    options.progress = [](size_t done, size_t total) {
      std::cerr << "\r" << done << "/" << total << std::flush;
      if (done == total) std::cerr << "\n";
    };
  DistanceCache cache = preprocess(ds, cm, options, costs_fingerprint(rules));
  save_cache_file(cache, out_path);
  std::cout << "cached " << cache.size() << " exemplars ("
            << cache.size() * (cache.size() ? cache.size() - 1 : 0) / 2
            << " pairs) to " << out_path << "\n";
  return kExitOk;
}

int cmd_explain(const CommonArgs& common, const std::string& cache_path,
                const std::string& source, const std::string& target_class,
                size_t k, const std::string& table_id,
                const std::string& format) {
  ExplanationDataset ds = common.dataset();
  auto rules = common.overrides();
  DistanceCache cache =
      load_cache_file(cache_path, ds, costs_fingerprint(rules));
  auto explanations =
      counterfactual(cache, ds, source, target_class, k, table_id);
  if (format == "json") {
    json out = json::array();
    for (const auto& x : explanations) {
      json edits = json::array();
      for (const auto& e : x.collapsed) edits.push_back(e.text);
      out.push_back({{"source", x.source},
                     {"target_class", x.target_class},
                     {"counterfactual", x.counterfactual},
                     {"cost", cost_json(x.edits.total_cost)},
                     {"edits", edits},
                     {"path", path_json(x.edits)}});
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  if (explanations.empty()) {
    std::cout << "no finite candidates\n";
    return kExitOk;
  }
  for (const auto& x : explanations) {
    std::cout << "counterfactual: " << x.counterfactual << " (cost "
              << x.edits.total_cost << ")\n";
    std::cout << "edits:\n";
    for (const auto& e : x.collapsed) std::cout << "  " << e.text << "\n";
  }
  return kExitOk;
}

int cmd_global(const CommonArgs& common, const std::string& cache_path,
               const std::string& source_class,
               const std::vector<std::string>& sources,
               const std::string& target_class, const std::string& table_id,
               const std::string& format) {
  ExplanationDataset ds = common.dataset();
  auto rules = common.overrides();
  DistanceCache cache =
      load_cache_file(cache_path, ds, costs_fingerprint(rules));
  SourceSelector selector;
  selector.source_class = source_class;
  selector.exemplars = sources;
  ImportanceReport report =
      global_importance(cache, ds, selector, target_class, table_id);

  if (format == "csv") {
    std::cout << "atom,importance,introduced,removed\n";
    for (const auto& row : report.rows)
      std::cout << row.atom.str() << "," << row.importance << ","
                << row.introduced << "," << row.removed << "\n";
    return kExitOk;
  }
  if (format == "json") {
    json rows = json::array();
    for (const auto& row : report.rows)
      rows.push_back({{"atom", row.atom.str()},
                      {"importance", row.importance},
                      {"introduced", row.introduced},
                      {"removed", row.removed}});
    json out = {{"target_class", report.target_class},
                {"n_explanations", report.n_explanations},
                {"skipped", report.skipped},
                {"rows", rows}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << std::left << std::setw(32) << "atom" << std::right
            << std::setw(12) << "importance" << std::setw(12) << "introduced"
            << std::setw(10) << "removed" << "\n";
  std::cout << std::fixed << std::setprecision(3);
  for (const auto& row : report.rows) {
    std::cout << std::left << std::setw(32) << row.atom.str() << std::right
              << std::setw(12) << std::showpos << row.importance
              << std::noshowpos << std::setw(12) << row.introduced
              << std::setw(10) << row.removed << "\n";
  }
  std::cout << "explanations: " << report.n_explanations
            << ", skipped: " << report.skipped << "\n";
  return kExitOk;
}

int cmd_cache_info(const std::string& cache_path) {
  std::ifstream in(cache_path, std::ios::binary);
  if (!in)
    throw Error(Errc::io, "cannot open cache file '" + cache_path + "'");
  std::cout << read_cache_manifest(in) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semcf: counterfactual explanations over knowledge graphs"};
  app.require_subcommand(1);

  CommonArgs common;

  auto* validate = app.add_subcommand(
      "validate", "check a dataset against every invariant");
  std::string validate_path;
  validate->add_option("dataset", validate_path, "dataset JSON file")
      ->required();

  auto* describe = app.add_subcommand(
      "describe", "dump an exemplar's concept-set description");
  std::string describe_exemplar;
  describe->add_option("exemplar", describe_exemplar, "exemplar id")
      ->required();
  describe->add_option("--dataset", common.dataset_path, "dataset JSON file")
      ->required();
  describe->add_flag("--unlabeled-filler-as-top",
                     common.unlabeled_filler_as_top,
                     "emit exists:r:TOP for role objects with no concept");

  auto* distance =
      app.add_subcommand("distance", "edit distance between two exemplars");
  std::string dist_source, dist_target, dist_backend = "set";
  bool show_path = false;
  int ged_budget = 10, timeout_ms = 0;
  distance->add_option("--dataset", common.dataset_path, "dataset JSON file")
      ->required();
  distance->add_option("--overrides", common.overrides_path,
                       "cost override JSON file");
  distance->add_option("--source", dist_source, "source exemplar")
      ->required();
  distance->add_option("--target", dist_target, "target exemplar")
      ->required();
  distance->add_option("--backend", dist_backend, "set or graph")
      ->check(CLI::IsMember({"set", "graph"}));
  distance->add_flag("--show-path", show_path, "print the edit path");
  distance->add_option("--ged-budget", ged_budget, "graph backend node budget")
      ->check(CLI::Range(2, 1000));
  distance->add_option("--timeout-ms", timeout_ms,
                       "graph backend time limit (0 = none)");
  distance->add_flag("--unlabeled-filler-as-top",
                     common.unlabeled_filler_as_top, "");

  auto* preprocess_cmd = app.add_subcommand(
      "preprocess", "compute and cache all pairwise edit paths");
  std::string out_path, pre_backend = "set";
  int jobs = 1;
  bool show_progress = false;
  preprocess_cmd
      ->add_option("--dataset", common.dataset_path, "dataset JSON file")
      ->required();
  preprocess_cmd->add_option("--overrides", common.overrides_path,
                             "cost override JSON file");
  preprocess_cmd->add_option("--out", out_path,
                             "cache output path (.semcf-cache)");
  preprocess_cmd->add_option("--backend", pre_backend, "set or graph")
      ->check(CLI::IsMember({"set", "graph"}));
  preprocess_cmd->add_option("--jobs", jobs, "worker count")
      ->check(CLI::Range(1, 256));
  preprocess_cmd->add_option("--ged-budget", ged_budget,
                             "graph backend node budget")
      ->check(CLI::Range(2, 1000));
  preprocess_cmd->add_flag("--progress", show_progress, "report progress");
  preprocess_cmd->add_flag("--unlabeled-filler-as-top",
                           common.unlabeled_filler_as_top, "");

  auto* explain = app.add_subcommand(
      "explain", "local counterfactual for one exemplar");
  std::string cache_path, explain_source, explain_target, table_id = "default";
  std::string explain_format = "human";
  size_t k = 1;
  explain->add_option("--dataset", common.dataset_path, "dataset JSON file")
      ->required();
  explain->add_option("--overrides", common.overrides_path,
                      "cost override JSON file");
  explain->add_option("--cache", cache_path, "cache file from preprocess");
  explain->add_option("--source", explain_source, "source exemplar")
      ->required();
  explain->add_option("--target", explain_target, "target class")->required();
  explain->add_option("--k", k, "number of counterfactuals")
      ->check(CLI::PositiveNumber);
  explain->add_option("--predictions", table_id, "prediction table id");
  explain->add_option("--format", explain_format, "human or json")
      ->check(CLI::IsMember({"human", "json"}));

  auto* global_cmd = app.add_subcommand(
      "global", "atom importance over a source subset");
  std::string source_class;
  std::vector<std::string> source_list;
  std::string global_target, global_format = "table";
  global_cmd->add_option("--dataset", common.dataset_path, "dataset JSON file")
      ->required();
  global_cmd->add_option("--overrides", common.overrides_path,
                         "cost override JSON file");
  global_cmd->add_option("--cache", cache_path, "cache file from preprocess");
  global_cmd->add_option("--source-class", source_class,
                         "select exemplars predicted as this class");
  global_cmd->add_option("--sources", source_list,
                         "explicit exemplar list")
      ->delimiter(',');
  global_cmd->add_option("--target", global_target, "target class")
      ->required();
  global_cmd->add_option("--predictions", table_id, "prediction table id");
  global_cmd->add_option("--format", global_format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  auto* cache_info = app.add_subcommand("cache-info", "print a cache manifest");
  std::string info_path;
  cache_info->add_option("cache", info_path, "cache file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_path);
    if (describe->parsed()) return cmd_describe(common, describe_exemplar);
    if (distance->parsed())
      return cmd_distance(common, dist_source, dist_target, dist_backend,
                          show_path, ged_budget, timeout_ms);
    if (preprocess_cmd->parsed()) {
      if (out_path.empty()) out_path = default_cache_path(common.dataset_path);
      if (out_path.empty()) {
        std::cerr << "error: --out is required (or set SEMCF_CACHE_DIR)\n";
        return kExitError;
      }
      return cmd_preprocess(common, out_path, pre_backend, jobs, ged_budget,
                            show_progress);
    }
    if (explain->parsed()) {
      if (cache_path.empty())
        cache_path = default_cache_path(common.dataset_path);
      if (cache_path.empty()) {
        std::cerr << "error: --cache is required (or set SEMCF_CACHE_DIR)\n";
        return kExitError;
      }
      return cmd_explain(common, cache_path, explain_source, explain_target,
                         k, table_id, explain_format);
    }
    if (global_cmd->parsed()) {
      if (cache_path.empty())
        cache_path = default_cache_path(common.dataset_path);
      if (cache_path.empty()) {
        std::cerr << "error: --cache is required (or set SEMCF_CACHE_DIR)\n";
        return kExitError;
      }
      return cmd_global(common, cache_path, source_class, source_list,
                        global_target, table_id, global_format);
    }
    if (cache_info->parsed()) return cmd_cache_info(info_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
