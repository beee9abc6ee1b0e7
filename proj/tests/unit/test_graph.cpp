#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mosaic/errors.hpp"
#include "mosaic/graph/algorithms.hpp"
#include "mosaic/graph/serialize.hpp"
#include "oracles.hpp"

using namespace mosaic;

namespace {

NodeSet subset(std::size_t universe, std::size_t mask, const std::vector<NodeId>& pool) {
  NodeSet s(universe);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (mask >> i & 1) s.insert(pool[i]);
  }
  return s;
}

std::vector<NodeId> others(NodeId n, NodeId x, NodeId y) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if (v != x && v != y) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("marks are stored per endpoint and adjacency needs both") {
  MixedGraph g({"A", "B", "C"}, GraphKind::Smcm);
  g.add_directed(0, 1);
  CHECK(g.adjacent(0, 1));
  CHECK(g.mark(0, 1) == kArrow);
  CHECK(g.mark(1, 0) == kTail);
  g.add_bidirected(0, 1);
  CHECK(g.mark(0, 1) == kArrow);
  CHECK(g.mark(1, 0) == (kArrow | kTail));
  CHECK(g.components(0, 1).size() == 2);
  CHECK(g.has_directed(0, 1));
  CHECK(g.has_bidirected(0, 1));
  CHECK_FALSE(g.adjacent(1, 2));
  CHECK_THROWS_AS(g.id("Q"), InputError);
}

TEST_CASE("cyclic SMCM fails validation") {
  MixedGraph g({"A", "B"}, GraphKind::Smcm);
  g.add_directed(0, 1);
  g.add_directed(1, 0);
  CHECK(has_directed_cycle(g));
  CHECK_THROWS_AS(g.validate(), InputError);
}

TEST_CASE("ancestors agree with matrix closure") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    const MixedGraph g = oracle::random_smcm(oracle::names(6), rng, 0.4);
    const auto anc = oracle::ancestor_matrix(g);
    for (NodeId a = 0; a < 6; ++a) {
      for (NodeId b = 0; b < 6; ++b) CHECK(is_ancestor(g, a, b) == anc[a][b]);
    }
  }
}

TEST_CASE("m-separation agrees with path listing") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 150; ++rep) {
    const NodeId n = 2 + rep % 4;
    const MixedGraph g = oracle::random_smcm(oracle::names(n), rng, 0.5);
    for (NodeId x = 0; x < n; ++x) {
      for (NodeId y = x + 1; y < n; ++y) {
        const auto pool = others(n, x, y);
        for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
          const NodeSet z = subset(g.size(), mask, pool);
          REQUIRE(m_separated(g, x, y, z) == !oracle::path_m_connected(g, x, y, z));
        }
      }
    }
  }
}

TEST_CASE("inducing paths agree with path listing") {
  std::mt19937_64 rng(13);
  std::bernoulli_distribution hidden(0.35);
  for (int rep = 0; rep < 300; ++rep) {
    const NodeId n = 3 + rep % 3;
    const MixedGraph g = oracle::random_smcm(oracle::names(n), rng, 0.5);
    NodeSet latent(g.size());
    for (NodeId v = 0; v < n; ++v) {
      if (hidden(rng)) latent.insert(v);
    }
    for (NodeId x = 0; x < n; ++x) {
      for (NodeId y = x + 1; y < n; ++y) {
        if (latent.contains(x) || latent.contains(y)) continue;
        REQUIRE(has_inducing_path(g, x, y, latent) == oracle::path_inducing(g, x, y, latent));
      }
    }
  }
}

TEST_CASE("inducing path length bound") {
  // A <- L -> B with L latent: an inducing path of two edges.
  MixedGraph g({"A", "L", "B"}, GraphKind::Smcm);
  g.add_directed(1, 0);
  g.add_directed(1, 2);
  const NodeSet latent(3, {1});
  CHECK(has_inducing_path(g, 0, 2, latent));
  CHECK(has_inducing_path(g, 0, 2, latent, 2));
  CHECK_FALSE(has_inducing_path(g, 0, 2, latent, 1));
  // a latent collider that is nobody's ancestor blocks
  MixedGraph c({"A", "L", "B"}, GraphKind::Smcm);
  c.add_bidirected(0, 1);
  c.add_bidirected(1, 2);
  CHECK_FALSE(has_inducing_path(c, 0, 2, latent));
}

TEST_CASE("manipulation matches surgery oracle") {
  std::mt19937_64 rng(14);
  std::bernoulli_distribution pick(0.3);
  for (int rep = 0; rep < 100; ++rep) {
    const MixedGraph g = oracle::random_smcm(oracle::names(5), rng, 0.4);
    NodeSet t(5);
    for (NodeId v = 0; v < 5; ++v) {
      if (pick(rng)) t.insert(v);
    }
    CHECK(manipulate(g, t) == oracle::surgery(g, t));
  }
}

TEST_CASE("MAG conversion keeps the separation table") {
  std::mt19937_64 rng(15);
  for (int rep = 0; rep < 100; ++rep) {
    const NodeId n = 3 + rep % 3;
    const MixedGraph g = oracle::random_smcm(oracle::names(n), rng, 0.4);
    const MixedGraph m = smcm_to_mag(g);
    CHECK(m.kind() == GraphKind::Mag);
    CHECK_NOTHROW(m.validate());
    for (NodeId x = 0; x < n; ++x) {
      for (NodeId y = x + 1; y < n; ++y) {
        const auto pool = others(n, x, y);
        for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
          const NodeSet z = subset(g.size(), mask, pool);
          REQUIRE(m_separated(g, x, y, z) == m_separated(m, x, y, z));
        }
      }
    }
  }
}

TEST_CASE("latent projection keeps separations among observed nodes") {
  std::mt19937_64 rng(16);
  for (int rep = 0; rep < 60; ++rep) {
    const MixedGraph g = oracle::random_smcm(oracle::names(6), rng, 0.5);
    const NodeSet latent(6, {static_cast<NodeId>(rep % 6)});
    const MixedGraph p = latent_projection(g, latent);
    REQUIRE(p.size() == 5);
    for (NodeId x = 0; x < 5; ++x) {
      for (NodeId y = x + 1; y < 5; ++y) {
        const NodeId gx = g.id(p.name(x)), gy = g.id(p.name(y));
        std::vector<NodeId> pool;
        for (NodeId v = 0; v < 5; ++v) {
          if (v != x && v != y) pool.push_back(v);
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
          NodeSet zp(5), zg(6);
          for (std::size_t i = 0; i < pool.size(); ++i) {
            if (!(mask >> i & 1)) continue;
            zp.insert(pool[i]);
            zg.insert(g.id(p.name(pool[i])));
          }
          REQUIRE(m_separated(p, x, y, zp) == m_separated(g, gx, gy, zg));
        }
      }
    }
  }
}

TEST_CASE("JSON round trip") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const MixedGraph g = oracle::random_smcm(oracle::names(5), rng, 0.3);
    CHECK(graph_from_json(graph_to_json(g)) == g);
  }
  MixedGraph pag({"A", "B"}, GraphKind::Pag);
  pag.set_edge(0, 1, kCircle, kArrow);
  CHECK(graph_from_json(graph_to_json(pag)) == pag);
  CHECK_THROWS_AS(graph_from_json("{\"kind\": \"smcm\""), InputError);
}

TEST_CASE("DOT output names every node") {
  MixedGraph g({"A", "B"}, GraphKind::Smcm);
  g.add_directed(0, 1);
  const std::string dot = graph_to_dot(g);
  CHECK(dot.find("\"A\"") != std::string::npos);
  CHECK(dot.find("\"B\"") != std::string::npos);
}
