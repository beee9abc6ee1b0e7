#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "mosaic/encode/constraints.hpp"
#include "mosaic/encode/search_graph.hpp"
#include "mosaic/errors.hpp"
#include "mosaic/pipeline/pipeline.hpp"
#include "mosaic/solve/backbone.hpp"
#include "mosaic/solve/sat.hpp"
#include "oracles.hpp"

using namespace mosaic;

namespace {

MixedGraph circle_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  MixedGraph h(oracle::names(n), GraphKind::Search);
  for (auto [a, b] : edges) h.set_edge(a, b, kCircle, kCircle);
  return h;
}

// Simple paths of the undirected skeleton, listed by brute force.
void all_simple_paths(const MixedGraph& h, std::vector<NodeId>& path, NodeId y,
                      std::set<std::vector<NodeId>>& out) {
  const NodeId at = path.back();
  if (at == y) {
    out.insert(path);
    return;
  }
  for (NodeId v = 0; v < static_cast<NodeId>(h.size()); ++v) {
    if (!h.adjacent(at, v) || std::find(path.begin(), path.end(), v) != path.end()) continue;
    path.push_back(v);
    all_simple_paths(h, path, y, out);
    path.pop_back();
  }
}

std::vector<Lit> assignment(const CnfProblem& p, const MixedGraph& g, bool& representable) {
  std::vector<Lit> lits;
  representable = true;
  const auto& h = p.search;
  for (NodeId a = 0; a < static_cast<NodeId>(h.size()); ++a) {
    for (NodeId b = a + 1; b < static_cast<NodeId>(h.size()); ++b) {
      const NodeId ga = g.id(h.name(a)), gb = g.id(h.name(b));
      const int e = p.edge_var(a, b);
      if (e == 0) {
        if (g.adjacent(ga, gb)) representable = false;
        continue;
      }
      const bool adj = g.adjacent(ga, gb);
      lits.push_back(adj ? e : -e);
      for (auto [from, at, gfrom, gat] : {std::tuple{a, b, ga, gb}, std::tuple{b, a, gb, ga}}) {
        const MarkSet m = adj ? g.mark(gfrom, gat) : MarkSet{kNoMark};
        lits.push_back((m & kArrow) ? p.arrow_var(from, at) : -p.arrow_var(from, at));
        lits.push_back((m & kTail) ? p.tail_var(from, at) : -p.tail_var(from, at));
      }
    }
  }
  return lits;
}

}  // namespace

TEST_CASE("bounded enumeration on a triangle") {
  const MixedGraph h = circle_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  PathQuery q;
  q.latent = NodeSet(3);
  q.targets = NodeSet(3);
  q.max_edges = 2;
  const auto paths = enumerate_possible_paths(h, 0, 1, q);
  CHECK(paths.size() == 2);
  q.max_edges = 1;
  CHECK(enumerate_possible_paths(h, 0, 1, q).size() == 1);
}

TEST_CASE("unconstrained enumeration lists every simple path") {
  std::mt19937_64 rng(51);
  std::bernoulli_distribution present(0.5);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + rep % 4;
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (present(rng)) edges.emplace_back(a, b);
      }
    }
    const MixedGraph h = circle_graph(n, edges);
    PathQuery q;
    q.latent = NodeSet(n);
    q.targets = NodeSet(n);
    for (NodeId x = 0; x < n; ++x) {
      for (NodeId y = x + 1; y < n; ++y) {
        std::set<std::vector<NodeId>> want;
        std::vector<NodeId> path{x};
        all_simple_paths(h, path, y, want);
        const auto got = enumerate_possible_paths(h, x, y, q);
        CHECK(std::set<std::vector<NodeId>>(got.begin(), got.end()) == want);
        CHECK(got.size() == want.size());
      }
    }
  }
}

TEST_CASE("manipulated interior nodes are excluded") {
  const MixedGraph h = circle_graph(3, {{0, 1}, {1, 2}});
  PathQuery q;
  q.latent = NodeSet(3);
  q.targets = NodeSet(3, {1});
  CHECK(enumerate_possible_paths(h, 0, 2, q).empty());
  q.targets = NodeSet(3);
  CHECK(enumerate_possible_paths(h, 0, 2, q).size() == 1);
}

TEST_CASE("hard constraints alone are satisfiable and keep the truth") {
  std::mt19937_64 rng(52);
  for (int rep = 0; rep < 40; ++rep) {
    const MixedGraph truth = oracle::random_smcm(oracle::names(4), rng, 0.5);
    RunConfig cfg;
    cfg.strategy = Strategy::None;
    const std::vector<Experiment> exps{{{"V0", "V1", "V2"}, {"V0"}}, {{"V1", "V2", "V3"}, {}}, {truth.names(), {}}};
    const auto r = run_oracle_pipeline(truth, exps, cfg);
    CHECK(check_sat(r.problem.cnf).result == SatResult::Sat);
    bool representable = false;
    const auto lits = assignment(r.problem, truth, representable);
    REQUIRE(representable);
    auto all = lits;
    for (Lit l : r.selection.accepted_literals()) all.push_back(l);
    CHECK(check_sat(r.problem.cnf, all).result == SatResult::Sat);
  }
}

TEST_CASE("models of the accepted constraints are exactly the consistent SMCMs") {
  std::mt19937_64 rng(53);
  const auto candidates = oracle::all_smcms(oracle::names(3));
  for (int rep = 0; rep < 40; ++rep) {
    const MixedGraph truth = oracle::random_smcm(oracle::names(3), rng, 0.4);
    std::vector<Experiment> exps{{{"V0", "V1"}, {}}, {{"V1", "V2"}, {}}, {{"V0", "V1", "V2"}, {}}};
    exps[rep % 3].targets.push_back(exps[rep % 3].observed.back());
    RunConfig cfg;
    cfg.strategy = Strategy::None;
    cfg.mpl = std::nullopt;
    const auto r = run_oracle_pipeline(truth, exps, cfg);
    const auto consistent = oracle::consistent_smcms(truth, exps);
    CdclSolver solver(r.problem.cnf);
    for (Lit l : r.selection.accepted_literals()) solver.add_clause({l});
    for (const auto& g : candidates) {
      bool representable = false;
      const auto lits = assignment(r.problem, g, representable);
      const bool expected = std::find(consistent.begin(), consistent.end(), g) != consistent.end();
      const bool got = representable && solver.solve(lits) == SatResult::Sat;
      REQUIRE(got == expected);
    }
  }
}

TEST_CASE("manipulated endpoint of an adjacency needs a tail") {
  MixedGraph truth({"A", "B"}, GraphKind::Smcm);
  truth.add_directed(0, 1);
  RunConfig cfg;
  cfg.strategy = Strategy::None;
  const auto r = run_oracle_pipeline(truth, {{{"A", "B"}, {"A"}}}, cfg);
  const auto& p = r.problem;
  const NodeId a = p.search.id("A"), b = p.search.id("B");
  CHECK(r.backbone.at(p.tail_var(b, a)) == Polarity::ForcedTrue);
  CHECK(r.backbone.at(p.arrow_var(b, a)) == Polarity::Free);
  CHECK(r.backbone.at(p.arrow_var(a, b)) == Polarity::ForcedTrue);
  const auto classes = oracle::classify(oracle::consistent_smcms(truth, {{{"A", "B"}, {"A"}}}));
  CHECK(classes.tail.at({1, 0}) == Polarity::ForcedTrue);
  CHECK(classes.arrow.at({1, 0}) == Polarity::Free);
}

TEST_CASE("exact ancestry gives the same summary") {
  std::mt19937_64 rng(54);
  for (int rep = 0; rep < 20; ++rep) {
    const MixedGraph truth = oracle::random_smcm(oracle::names(4), rng, 0.5);
    const std::vector<Experiment> exps{{{"V0", "V1", "V2"}, {}}, {{"V1", "V2", "V3"}, {"V2"}}};
    RunConfig a, b;
    a.strategy = b.strategy = Strategy::None;
    a.mpl = b.mpl = std::nullopt;
    b.exact_ancestry = true;
    CHECK(run_oracle_pipeline(truth, exps, a).summary == run_oracle_pipeline(truth, exps, b).summary);
  }
}

TEST_CASE("soft literals carry kind, dataset and p-value") {
  MixedGraph truth({"A", "B", "C"}, GraphKind::Smcm);
  truth.add_directed(0, 1);
  truth.add_directed(2, 1);
  RunConfig cfg;
  cfg.strategy = Strategy::None;
  const auto r = run_oracle_pipeline(truth, {{{"A", "B", "C"}, {}}}, cfg);
  int adj = 0, nonadj = 0, coll = 0;
  for (const auto& s : r.problem.soft) {
    CHECK(s.dataset == 0);
    if (s.kind == LiteralKind::Adjacency) {
      ++adj;
      CHECK(s.p == 0.0);
    } else if (s.kind == LiteralKind::NonAdjacency) {
      ++nonadj;
      CHECK(s.p == 1.0);
      CHECK(s.claims_independence());
    } else if (s.kind == LiteralKind::Collider) {
      ++coll;
      CHECK(s.nodes == std::vector<std::string>{"A", "B", "C"});
    }
  }
  CHECK(adj == 2);
  CHECK(nonadj == 1);
  CHECK(coll == 1);
}

TEST_CASE("unknown target is rejected") {
  MixedGraph truth({"A", "B"}, GraphKind::Smcm);
  truth.add_directed(0, 1);
  RunConfig cfg;
  const auto r = run_oracle_pipeline(truth, {{{"A", "B"}, {}}}, cfg);
  CHECK_THROWS_AS(build_constraints(r.problem.search, r.pags, {{"Z"}}), InputError);
}
