#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "mosaic/graph/mixed_graph.hpp"
#include "mosaic/pipeline/pipeline.hpp"
#include "mosaic/stats/dataset.hpp"

namespace mosaic {

struct SimulationConfig {
  int variables = 20;
  int max_parents = 5;
  int datasets = 5;
  int max_latent = 3;
  int max_manipulated = 2;
  std::size_t rows = 1000;
  double min_partial_correlation = 0.2;
};

/// Nodes X1..Xn in a shuffled causal order; each node takes a uniform number
/// of parents in [0, min(max_parents, position)] drawn uniformly from its predecessors.
MixedGraph random_dag(int n, int max_parents, std::uint64_t seed);

struct LinearGaussianModel {
  MixedGraph dag;
  std::vector<NodeId> order;  // causal order
  Eigen::MatrixXd weights;    // weights(parent, child)
};

/// Edge weights drawn with random sign and magnitude in [0.5, 1.5], redrawn per
/// child until every parent keeps |partial correlation| >= `min_partial`
/// with the child given the other parents. Unit noise variances.
LinearGaussianModel random_linear_gaussian(const MixedGraph& dag, std::mt19937_64& rng, double min_partial = 0.2);

/// Smallest |partial correlation| of a child with one of its parents given the
/// others, under the unmanipulated model (1 when there are no edges).
double min_parent_partial_correlation(const LinearGaussianModel& model);

/// Samples every variable; manipulated ones are replaced by independent N(0, 1) draws.
Eigen::MatrixXd sample_linear_gaussian(const LinearGaussianModel& model, const NodeSet& manipulated, std::size_t rows,
                                       std::mt19937_64& rng);

/// Disjoint latent / manipulated sets per dataset with uniform sizes in
/// [0, cap], redrawn until every variable is observed unmanipulated somewhere.
std::vector<Experiment> draw_experiments(const std::vector<std::string>& names, int datasets, int max_latent,
                                         int max_manipulated, std::mt19937_64& rng);

struct GeneratedStudy {
  MixedGraph dag;
  MixedGraph truth;  // SMCM over the variables observed somewhere
  LinearGaussianModel model;
  std::vector<Experiment> experiments;
  std::vector<Dataset> datasets;
  std::uint64_t seed = 0;
};

GeneratedStudy sample_study(const MixedGraph& dag, int datasets, int max_latent, int max_manipulated,
                            std::size_t rows, std::uint64_t seed);
GeneratedStudy generate_study(const SimulationConfig& config, std::uint64_t seed);

/// dataset_<i>.csv files, manifest.json and truth.json under `dir`.
void write_study(const GeneratedStudy& study, const std::filesystem::path& dir);

}  // namespace mosaic
