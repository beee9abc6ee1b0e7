#include "mosaic/simulate/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>

#include <Eigen/Dense>

#include "mosaic/errors.hpp"
#include "mosaic/graph/algorithms.hpp"
#include "mosaic/graph/serialize.hpp"

namespace mosaic {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<NodeId> topological_order(const MixedGraph& dag) {
  const NodeId n = static_cast<NodeId>(dag.size());
  std::vector<int> indegree(n, 0);
  for (NodeId v = 0; v < n; ++v) indegree[v] = static_cast<int>(dag.parents(v).size());
  std::vector<NodeId> order;
  std::vector<bool> done(n, false);
  while (static_cast<NodeId>(order.size()) < n) {
    bool progressed = false;
    for (NodeId v = 0; v < n; ++v) {
      if (done[v] || indegree[v] != 0) continue;
      done[v] = true;
      order.push_back(v);
      for (NodeId c = 0; c < n; ++c) {
        if (dag.has_directed(v, c)) --indegree[c];
      }
      progressed = true;
    }
    if (!progressed) throw InputError("graph has a directed cycle");
  }
  return order;
}

// Partial correlations of `child` with each parent given the remaining parents.
std::vector<double> parent_partials(const Eigen::MatrixXd& cov, const std::vector<NodeId>& parents, NodeId child) {
  const Eigen::Index k = static_cast<Eigen::Index>(parents.size());
  Eigen::MatrixXd joint(k + 1, k + 1);
  std::vector<NodeId> ids = parents;
  ids.push_back(child);
  for (Eigen::Index i = 0; i <= k; ++i) {
    for (Eigen::Index j = 0; j <= k; ++j) joint(i, j) = cov(ids[i], ids[j]);
  }
  const Eigen::MatrixXd omega = joint.inverse();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < k; ++i) out.push_back(-omega(i, k) / std::sqrt(omega(i, i) * omega(k, k)));
  return out;
}

Eigen::MatrixXd implied_covariance(const LinearGaussianModel& m) {
  const Eigen::Index n = static_cast<Eigen::Index>(m.dag.size());
  // X = B^T X + e  =>  cov = (I - B^T)^{-1} (I - B^T)^{-T}
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - m.weights.transpose();
  const Eigen::MatrixXd inv = a.inverse();
  return inv * inv.transpose();
}

}  // namespace

MixedGraph random_dag(int n, int max_parents, std::uint64_t seed) {
  if (n < 1) throw InputError("a graph needs at least one node");
  if (max_parents < 0) throw InputError("max_parents must be non-negative");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
  MixedGraph dag(names, GraphKind::Dag);
  std::mt19937_64 rng(seed);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int pos = 1; pos < n; ++pos) {
    const int k = uniform_int(rng, 0, std::min(max_parents, pos));
    std::vector<NodeId> pool(order.begin(), order.begin() + pos);
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int j = 0; j < k; ++j) dag.add_directed(pool[j], order[pos]);
  }
  return dag;
}

LinearGaussianModel random_linear_gaussian(const MixedGraph& dag, std::mt19937_64& rng, double min_partial) {
  LinearGaussianModel m;
  m.dag = dag;
  m.order = topological_order(dag);
  const Eigen::Index n = static_cast<Eigen::Index>(dag.size());
  m.weights = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  std::uniform_real_distribution<double> magnitude(0.5, 1.5);
  std::bernoulli_distribution negative(0.5);
  std::vector<NodeId> done;
  for (NodeId c : m.order) {
    const auto parents = dag.parents(c);
    for (int attempt = 0;; ++attempt) {
      if (attempt == 10000) throw InternalError("could not draw weights meeting the partial correlation floor");
      for (NodeId p : parents) m.weights(p, c) = (negative(rng) ? -1.0 : 1.0) * magnitude(rng);
      // covariance of c with the nodes already placed
      double var = 1.0;
      for (NodeId p : parents) {
        for (NodeId q : parents) var += m.weights(p, c) * m.weights(q, c) * cov(p, q);
      }
      cov(c, c) = var;
      for (NodeId j : done) {
        double s = 0.0;
        for (NodeId p : parents) s += m.weights(p, c) * cov(p, j);
        cov(c, j) = cov(j, c) = s;
      }
      if (parents.empty()) break;
      const auto partials = parent_partials(cov, parents, c);
      if (std::all_of(partials.begin(), partials.end(), [&](double r) { return std::abs(r) >= min_partial; })) break;
    }
    done.push_back(c);
  }
  return m;
}

double min_parent_partial_correlation(const LinearGaussianModel& model) {
  const Eigen::MatrixXd cov = implied_covariance(model);
  double out = 1.0;
  for (NodeId c = 0; c < static_cast<NodeId>(model.dag.size()); ++c) {
    const auto parents = model.dag.parents(c);
    if (parents.empty()) continue;
    for (double r : parent_partials(cov, parents, c)) out = std::min(out, std::abs(r));
  }
  return out;
}

Eigen::MatrixXd sample_linear_gaussian(const LinearGaussianModel& model, const NodeSet& manipulated, std::size_t rows,
                                       std::mt19937_64& rng) {
  const Eigen::Index n = static_cast<Eigen::Index>(model.dag.size());
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), n);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (NodeId c : model.order) {
    const bool cut = manipulated.contains(c);
    const auto parents = model.dag.parents(c);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      double v = noise(rng);
      if (!cut) {
        for (NodeId p : parents) v += model.weights(p, c) * x(r, p);
      }
      x(r, c) = v;
    }
  }
  return x;
}

std::vector<Experiment> draw_experiments(const std::vector<std::string>& names, int datasets, int max_latent,
                                         int max_manipulated, std::mt19937_64& rng) {
  const int n = static_cast<int>(names.size());
  if (datasets < 1) throw InputError("need at least one dataset");
  if (max_latent < 0 || max_manipulated < 0) throw InputError("caps must be non-negative");
  if (max_latent > n - 2) throw InputError("max_latent leaves fewer than two observed variables");
  if (max_latent + max_manipulated > n) throw InputError("latent and manipulated caps exceed the variable count");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<Experiment> out;
    std::vector<bool> free_somewhere(n, false);
    for (int d = 0; d < datasets; ++d) {
      const int l = uniform_int(rng, 0, max_latent);
      const int m = uniform_int(rng, 0, max_manipulated);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<int> role(n, 0);  // 0 observed, 1 latent, 2 manipulated
      for (int i = 0; i < l; ++i) role[perm[i]] = 1;
      for (int i = l; i < l + m; ++i) role[perm[i]] = 2;
      Experiment e;
      for (int v = 0; v < n; ++v) {
        if (role[v] != 1) e.observed.push_back(names[v]);
        if (role[v] == 2) e.targets.push_back(names[v]);
        if (role[v] == 0) free_somewhere[v] = true;
      }
      out.push_back(std::move(e));
    }
    if (std::all_of(free_somewhere.begin(), free_somewhere.end(), [](bool b) { return b; })) return out;
  }
  throw InputError("could not draw a conservative family of experiments with these caps");
}

GeneratedStudy sample_study(const MixedGraph& dag, int datasets, int max_latent, int max_manipulated,
                            std::size_t rows, std::uint64_t seed) {
  GeneratedStudy s;
  s.seed = seed;
  s.dag = dag;
  std::mt19937_64 rng(seed);
  s.model = random_linear_gaussian(dag, rng);
  s.experiments = draw_experiments(dag.names(), datasets, max_latent, max_manipulated, rng);
  NodeSet never_observed(dag.size());
  for (NodeId v = 0; v < static_cast<NodeId>(dag.size()); ++v) never_observed.insert(v);
  for (const auto& e : s.experiments) {
    for (const auto& name : e.observed) never_observed.erase(dag.id(name));
  }
  s.truth = latent_projection(dag, never_observed);
  for (const auto& e : s.experiments) {
    const Eigen::MatrixXd full = sample_linear_gaussian(s.model, dag.node_set(e.targets), rows, rng);
    Dataset d;
    d.variables = e.observed;
    d.intervention_targets = e.targets;
    d.rows.resize(full.rows(), static_cast<Eigen::Index>(e.observed.size()));
    for (std::size_t j = 0; j < e.observed.size(); ++j) {
      d.rows.col(static_cast<Eigen::Index>(j)) = full.col(dag.id(e.observed[j]));
    }
    s.datasets.push_back(std::move(d));
  }
  return s;
}

GeneratedStudy generate_study(const SimulationConfig& config, std::uint64_t seed) {
  std::seed_seq seq{seed, std::uint64_t{0x5eed}};
  std::array<std::uint64_t, 2> seeds{};
  seq.generate(seeds.begin(), seeds.end());
  const MixedGraph dag = random_dag(config.variables, config.max_parents, seeds[0]);
  GeneratedStudy s = sample_study(dag, config.datasets, config.max_latent, config.max_manipulated, config.rows, seeds[1]);
  s.seed = seed;
  return s;
}

void write_study(const GeneratedStudy& study, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 0; i < study.datasets.size(); ++i) {
    const std::string file = "dataset_" + std::to_string(i + 1) + ".csv";
    write_csv(study.datasets[i], dir / file);
    ManifestEntry e;
    e.csv_path = file;
    e.intervention_targets = study.datasets[i].intervention_targets;
    entries.push_back(std::move(e));
  }
  const auto put = [&](const char* name, const std::string& text) {
    std::ofstream out(dir / name);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    out << text << '\n';
  };
  put("manifest.json", manifest_to_json(entries));
  put("truth.json", graph_to_json(study.truth));
  put("dag.json", graph_to_json(study.dag));
}

}  // namespace mosaic
