#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "mosaic/errors.hpp"
#include "mosaic/graph/algorithms.hpp"
#include "mosaic/graph/serialize.hpp"
#include "mosaic/pipeline/manifest.hpp"
#include "mosaic/simulate/generator.hpp"
#include "mosaic/simulate/scoring.hpp"

using namespace mosaic;

TEST_CASE("degenerate DAG sizes") {
  const MixedGraph one = random_dag(1, 5, 1);
  CHECK(one.size() == 1);
  CHECK(one.name(0) == "X1");
  CHECK(one.edge_count() == 0);
  CHECK(random_dag(8, 0, 2).edge_count() == 0);
}

TEST_CASE("random DAGs are acyclic and respect the parent cap") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MixedGraph g = random_dag(12, 3, seed);
    CHECK(g.kind() == GraphKind::Dag);
    CHECK_FALSE(has_directed_cycle(g));
    for (NodeId v = 0; v < 12; ++v) CHECK(g.parents(v).size() <= 3);
  }
}

TEST_CASE("parent counts are uniform over the allowed range") {
  // Positions 0..5 allow 0..k parents (cap 5), so E[edges] = sum k/2 = 7.5.
  double total = 0.0;
  std::array<int, 2> two_node{0, 0};
  const int reps = 4000;
  for (int seed = 0; seed < reps; ++seed) {
    total += static_cast<double>(random_dag(6, 5, static_cast<std::uint64_t>(seed)).edge_count());
    ++two_node[random_dag(2, 1, static_cast<std::uint64_t>(seed)).edge_count()];
  }
  CHECK(total / reps == doctest::Approx(7.5).epsilon(0.03));
  CHECK(two_node[1] / static_cast<double>(reps) == doctest::Approx(0.5).epsilon(0.06));
}

TEST_CASE("weights meet the partial-correlation floor") {
  std::mt19937_64 rng(71);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const MixedGraph dag = random_dag(10, 4, seed);
    const auto model = random_linear_gaussian(dag, rng, 0.2);
    CHECK(min_parent_partial_correlation(model) >= 0.2);
    for (NodeId c = 0; c < 10; ++c) {
      for (NodeId p = 0; p < 10; ++p) {
        const double w = std::abs(model.weights(p, c));
        if (dag.has_directed(p, c)) {
          CHECK(w >= 0.5);
          CHECK(w <= 1.5);
        } else {
          CHECK(w == 0.0);
        }
      }
    }
  }
}

TEST_CASE("manipulated variables are standard normal and cut from their parents") {
  MixedGraph dag({"A", "B"}, GraphKind::Dag);
  dag.add_directed(0, 1);
  std::mt19937_64 rng(72);
  const auto model = random_linear_gaussian(dag, rng);
  const Eigen::MatrixXd rows = sample_linear_gaussian(model, NodeSet(2, {1}), 20000, rng);
  const Eigen::VectorXd b = rows.col(1);
  const double mean = b.mean();
  const double var = (b.array() - mean).square().mean();
  CHECK(std::abs(mean) < 0.03);
  CHECK(var == doctest::Approx(1.0).epsilon(0.04));
  const Eigen::VectorXd a = rows.col(0);
  const double cov = ((a.array() - a.mean()) * (b.array() - mean)).mean();
  CHECK(std::abs(cov) < 0.03);

  const Eigen::MatrixXd plain = sample_linear_gaussian(model, NodeSet(2), 20000, rng);
  const double w = model.weights(0, 1);
  const Eigen::VectorXd pb = plain.col(1);
  const double pvar = (pb.array() - pb.mean()).square().mean();
  CHECK(pvar == doctest::Approx(1.0 + w * w).epsilon(0.04));
}

TEST_CASE("experiments cover every variable unmanipulated") {
  std::mt19937_64 rng(73);
  const auto names = random_dag(8, 2, 3).names();
  for (int rep = 0; rep < 50; ++rep) {
    const auto exps = draw_experiments(names, 3, 3, 2, rng);
    REQUIRE(exps.size() == 3);
    for (const auto& n : names) {
      bool covered = false;
      for (const auto& e : exps) {
        const bool obs = std::find(e.observed.begin(), e.observed.end(), n) != e.observed.end();
        const bool tgt = std::find(e.targets.begin(), e.targets.end(), n) != e.targets.end();
        if (tgt) CHECK(obs);
        covered |= obs && !tgt;
      }
      CHECK(covered);
    }
    for (const auto& e : exps) {
      CHECK(e.observed.size() >= names.size() - 3);
      CHECK(e.targets.size() <= 2);
    }
  }
}

TEST_CASE("studies are deterministic in the seed") {
  SimulationConfig c;
  c.variables = 6;
  c.rows = 50;
  c.datasets = 2;
  const auto a = generate_study(c, 99), b = generate_study(c, 99), d = generate_study(c, 100);
  CHECK(a.dag == b.dag);
  CHECK(a.truth == b.truth);
  REQUIRE(a.datasets.size() == 2);
  CHECK(a.datasets[0].rows == b.datasets[0].rows);
  CHECK(a.datasets[1].intervention_targets == b.datasets[1].intervention_targets);
  CHECK_FALSE(a.datasets[0].rows == d.datasets[0].rows);
}

TEST_CASE("written studies read back") {
  SimulationConfig c;
  c.variables = 5;
  c.rows = 30;
  c.datasets = 2;
  const auto study = generate_study(c, 5);
  const auto dir = std::filesystem::temp_directory_path() / "mosaic_sim_test";
  std::filesystem::remove_all(dir);
  write_study(study, dir);
  const auto entries = read_manifest(dir / "manifest.json");
  REQUIRE(entries.size() == 2);
  const Dataset d = load_dataset(entries[1]);
  CHECK(d.variables == study.datasets[1].variables);
  CHECK(d.rows.isApprox(study.datasets[1].rows, 1e-9));
  std::ifstream truth(dir / "truth.json");
  const std::string text((std::istreambuf_iterator<char>(truth)), std::istreambuf_iterator<char>());
  CHECK(graph_from_json(text) == study.truth);
  std::filesystem::remove_all(dir);
}

TEST_CASE("metrics on a hand-checked summary") {
  MixedGraph truth({"A", "B", "C"}, GraphKind::Smcm);
  truth.add_directed(0, 1);
  truth.add_bidirected(1, 2);
  SummaryGraph h;
  h.names = {"C", "B", "A"};  // order differs from the truth on purpose
  h.edges = {{1, 2, EdgeStatus::Solid, kArrow, kTail},     // A -> B
             {0, 1, EdgeStatus::Dashed, kCircle, kCircle},  // B - C
             {0, 2, EdgeStatus::Solid, kCircle, kArrow}};   // A -o C with arrow at A
  const QualityReport q = score_summary(h, truth);
  CHECK(q.solid_edges == 2);
  CHECK(q.solid_edges_in_truth == 1);
  CHECK(q.truth_edges == 2);
  CHECK(*q.s_precision == doctest::Approx(0.5));
  CHECK(*q.s_recall == doctest::Approx(0.5));
  CHECK(q.orientations == 3);
  CHECK(q.correct_orientations == 2);
  CHECK(*q.o_precision == doctest::Approx(2.0 / 3.0));
  CHECK(*q.o_recall == doctest::Approx(2.0 / 4.0));
  CHECK(*q.dashed_edge_fraction == doctest::Approx(1.0 / 3.0));
  CHECK(*q.dashed_endpoint_fraction == doctest::Approx(3.0 / 6.0));
}

TEST_CASE("metrics with empty denominators") {
  MixedGraph truth({"A", "B"}, GraphKind::Smcm);
  SummaryGraph h;
  h.names = {"A", "B"};
  const QualityReport q = score_summary(h, truth);
  CHECK_FALSE(q.s_precision.has_value());
  CHECK_FALSE(q.s_recall.has_value());
  CHECK_FALSE(q.o_precision.has_value());
  CHECK_FALSE(q.dashed_edge_fraction.has_value());
  h.names = {"A", "Q"};
  CHECK_THROWS_AS(score_summary(h, truth), InputError);
}

TEST_CASE("median skips undefined values") {
  CHECK(*median({1.0, std::nullopt, 3.0, 2.0}) == 2.0);
  CHECK(*median({1.0, 4.0}) == 2.5);
  CHECK_FALSE(median({std::nullopt}).has_value());
}
