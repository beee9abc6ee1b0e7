#include "mosaic/pipeline/pipeline.hpp"

#include <chrono>
#include <memory>

#include <json.hpp>

#include "mosaic/encode/search_graph.hpp"
#include "mosaic/errors.hpp"
#include "mosaic/graph/serialize.hpp"
#include "mosaic/stats/pvalue_cache.hpp"

namespace mosaic {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<StageTiming>& out) : out_(out), start_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    out_.push_back({stage, std::chrono::duration<double>(now - start_).count()});
    start_ = now;
  }

 private:
  std::vector<StageTiming>& out_;
  std::chrono::steady_clock::time_point start_;
};

void finish(PipelineResult& result, const std::vector<std::vector<std::string>>& targets, const RunConfig& config,
            Stopwatch& clock) {
  const MixedGraph h = initialize_search_graph(result.pags, targets);
  result.problem = build_constraints(h, result.pags, targets, {config.mpl, config.exact_ancestry});
  clock.lap("encode");
  result.selection = config.strategy == Strategy::Mmr ? select_consistent_literals(result.problem)
                                                       : accept_all_literals(result.problem);
  clock.lap("resolve");
  result.backbone =
      compute_backbone(result.problem.cnf, result.selection.accepted_literals(), result.problem.core_vars());
  clock.lap("backbone");
  result.summary = summarize(result.problem, result.backbone);
}

}  // namespace

PipelineResult run_from_pags(std::vector<FciResult> pags, const std::vector<std::vector<std::string>>& targets,
                             const RunConfig& config) {
  if (pags.empty()) throw InputError("need at least one experiment");
  PipelineResult result;
  result.pags = std::move(pags);
  Stopwatch clock(result.timings);
  finish(result, targets, config, clock);
  return result;
}

PipelineResult run_pipeline(const std::vector<const CiTest*>& tests,
                            const std::vector<std::vector<std::string>>& targets, const RunConfig& config) {
  if (tests.empty()) throw InputError("need at least one experiment");
  if (tests.size() != targets.size()) throw InputError("need one target list per experiment");
  PipelineResult result;
  Stopwatch clock(result.timings);
  FciOptions options;
  options.alpha = config.alpha;
  options.max_k = config.max_k;
  options.pds = config.pds;
  for (const CiTest* test : tests) {
    PValueCache cache(*test);
    result.pags.push_back(run_fci(cache, options));
  }
  clock.lap("fci");
  finish(result, targets, config, clock);
  return result;
}

PipelineResult run_pipeline(const std::vector<Dataset>& datasets, const RunConfig& config) {
  std::vector<std::unique_ptr<CiTest>> owned;
  std::vector<const CiTest*> tests;
  std::vector<std::vector<std::string>> targets;
  for (const auto& d : datasets) {
    d.validate();
    owned.push_back(make_test(d.value_kind == ValueKind::Discrete ? "g2" : config.test, d));
    tests.push_back(owned.back().get());
    targets.push_back(d.intervention_targets);
  }
  return run_pipeline(tests, targets, config);
}

PipelineResult run_oracle_pipeline(const MixedGraph& truth, const std::vector<Experiment>& experiments,
                                   const RunConfig& config) {
  std::vector<std::unique_ptr<CiTest>> owned;
  std::vector<const CiTest*> tests;
  std::vector<std::vector<std::string>> targets;
  for (const auto& e : experiments) {
    owned.push_back(std::make_unique<MSeparationOracle>(truth, e.observed, e.targets));
    tests.push_back(owned.back().get());
    targets.push_back(e.targets);
  }
  return run_pipeline(tests, targets, config);
}

PipelineResult run_manifest(const std::vector<ManifestEntry>& entries, const RunConfig& config,
                            const MixedGraph* oracle) {
  const bool oracle_entries = !entries.empty() && entries.front().csv_path.empty();
  for (const auto& e : entries) {
    if (e.csv_path.empty() != oracle_entries) throw InputError("manifest mixes data and oracle entries");
  }
  if (oracle_entries) {
    if (!oracle) throw InputError("oracle manifest entries need an oracle graph");
    std::vector<Experiment> experiments;
    for (const auto& e : entries) experiments.push_back({e.variables, e.intervention_targets});
    return run_oracle_pipeline(*oracle, experiments, config);
  }
  std::vector<Dataset> datasets;
  for (const auto& e : entries) datasets.push_back(load_dataset(e));
  return run_pipeline(datasets, config);
}

std::string PipelineResult::diagnostics_json(const RunConfig& config, int indent) const {
  nlohmann::json cfg{{"alpha", config.alpha},
                     {"max_k", config.max_k},
                     {"mpl", config.mpl ? nlohmann::json(*config.mpl) : nlohmann::json(nullptr)},
                     {"test", config.test},
                     {"strategy", to_string(config.strategy)},
                     {"pds", config.pds},
                     {"seed", config.seed},
                     {"exact_ancestry", config.exact_ancestry}};
  nlohmann::json pag_list = nlohmann::json::array();
  for (const auto& p : pags) pag_list.push_back(nlohmann::json::parse(graph_to_json(p.pag, -1)));
  nlohmann::json timing = nlohmann::json::object();
  for (const auto& t : timings) timing[t.stage] = t.seconds;
  nlohmann::json out{{"config", cfg},
                     {"pags", pag_list},
                     {"search_graph", nlohmann::json::parse(graph_to_json(problem.search, -1))},
                     {"cnf", {{"variables", problem.cnf.num_vars}, {"clauses", problem.cnf.clauses.size()}}},
                     {"selection", nlohmann::json::parse(selection_json(selection, -1))},
                     {"backbone_solver_calls", backbone.solver_calls},
                     {"timings", timing}};
  return out.dump(indent);
}

}  // namespace mosaic
