#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mosaic/encode/constraints.hpp"
#include "mosaic/fci/fci.hpp"
#include "mosaic/pipeline/manifest.hpp"
#include "mosaic/pipeline/summary.hpp"
#include "mosaic/resolve/select.hpp"
#include "mosaic/solve/backbone.hpp"
#include "mosaic/stats/ci_test.hpp"

namespace mosaic {

/// Observed variables and manipulated subset of one experiment.
struct Experiment {
  std::vector<std::string> observed;
  std::vector<std::string> targets;
};

struct RunConfig {
  double alpha = 0.1;
  int max_k = 5;
  std::optional<int> mpl = 3;  // nullopt: unbounded
  std::string test = "fisher_z";
  Strategy strategy = Strategy::Mmr;
  bool pds = true;
  std::uint64_t seed = 0;
  bool exact_ancestry = false;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct PipelineResult {
  SummaryGraph summary;
  std::vector<FciResult> pags;
  CnfProblem problem;
  SelectionReport selection;
  BackboneReport backbone;
  std::vector<StageTiming> timings;

  std::string diagnostics_json(const RunConfig& config, int indent = 2) const;
};

/// Encode, resolve and summarize from already learnt PAGs.
PipelineResult run_from_pags(std::vector<FciResult> pags, const std::vector<std::vector<std::string>>& targets,
                             const RunConfig& config);

/// Full run with one CI test and target list per experiment.
PipelineResult run_pipeline(const std::vector<const CiTest*>& tests,
                            const std::vector<std::vector<std::string>>& targets, const RunConfig& config);

PipelineResult run_pipeline(const std::vector<Dataset>& datasets, const RunConfig& config);

/// CI questions answered by m-separation in the manipulated `truth`.
PipelineResult run_oracle_pipeline(const MixedGraph& truth, const std::vector<Experiment>& experiments,
                                   const RunConfig& config);

/// Data entries are loaded from disk; oracle entries need `oracle`.
PipelineResult run_manifest(const std::vector<ManifestEntry>& entries, const RunConfig& config,
                            const MixedGraph* oracle = nullptr);

}  // namespace mosaic
