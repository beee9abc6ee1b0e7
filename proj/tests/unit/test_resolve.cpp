#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mosaic/errors.hpp"
#include "mosaic/resolve/mmr.hpp"
#include "mosaic/resolve/select.hpp"

using namespace mosaic;

namespace {

double null_odds(double p, double pi0, double xi) {
  return pi0 / ((1.0 - pi0) * xi * std::pow(p, xi - 1.0));
}

SoftLiteral literal(LiteralKind kind, int dataset, Lit lit, double p) {
  SoftLiteral s;
  s.kind = kind;
  s.dataset = dataset;
  s.nodes = {"A", "B"};
  s.pair = {"A", "B"};
  s.lit = lit;
  s.p = p;
  return s;
}

CnfProblem one_variable_problem(std::vector<SoftLiteral> soft) {
  CnfProblem p;
  p.cnf.num_vars = 1;
  p.soft = std::move(soft);
  return p;
}

std::vector<double> beta_sample(std::size_t n, double pi0, double xi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(u(rng) < pi0 ? u(rng) : std::pow(u(rng), 1.0 / xi));
  return out;
}

}  // namespace

TEST_CASE("MMR score follows the posterior odds formula") {
  const BetaMixtureFit fit{0.6, 0.1, 100, false};
  for (double p : {1e-8, 0.0038, 0.02, 0.0493, 0.2, 0.6373, 0.99}) {
    const MmrScore s = mmr_score(p, fit);
    const double e0 = null_odds(p, 0.6, 0.1);
    CHECK(s.e0 == doctest::Approx(e0).epsilon(1e-9));
    CHECK(s.e1 == doctest::Approx(1.0 / e0).epsilon(1e-9));
    CHECK(s.independence == (e0 > 1.0));
    CHECK(s.score == doctest::Approx(std::max(e0, 1.0 / e0)).epsilon(1e-9));
    CHECK(s.score >= 1.0);
  }
}

TEST_CASE("MMR anchors: similar scores on opposite sides of the crossing") {
  const BetaMixtureFit fit{0.6, 0.1, 100, false};
  const MmrScore dep = mmr_score(0.0038, fit), ind = mmr_score(0.6373, fit);
  CHECK_FALSE(dep.independence);
  CHECK(ind.independence);
  CHECK(dep.score == doctest::Approx(ind.score).epsilon(0.02));
  // E0 = 1 solved in closed form
  const double crossing = std::pow(0.6 / (0.4 * 0.1), 1.0 / (0.1 - 1.0));
  CHECK(crossing == doctest::Approx(0.0493).epsilon(0.01));
  CHECK(mmr_score(crossing * 0.99, fit).independence == false);
  CHECK(mmr_score(crossing * 1.01, fit).independence == true);
}

TEST_CASE("zero p-values are floored") {
  const MmrScore s = mmr_score(0.0, {0.5, 0.5, 100, false});
  CHECK(std::isfinite(s.score));
  CHECK_FALSE(s.independence);
}

TEST_CASE("pi0 estimates") {
  std::mt19937_64 rng(61);
  CHECK(estimate_pi0(beta_sample(4000, 1.0, 0.2, rng)) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(estimate_pi0(std::vector<double>(100, 1e-9)) == doctest::Approx(0.01));
  CHECK(estimate_pi0(beta_sample(20000, 0.5, 0.02, rng)) == doctest::Approx(0.5).epsilon(0.1));
  CHECK_THROWS_AS(estimate_pi0({}), InputError);
}

TEST_CASE("xi maximum likelihood recovers the shape") {
  std::mt19937_64 rng(62);
  for (double xi : {0.05, 0.1, 0.3, 0.6}) {
    const auto sample = beta_sample(5000, 0.0, xi, rng);
    CHECK(fit_xi(sample, 0.0) == doctest::Approx(xi).epsilon(0.1));
    const double best = mixture_neg_log_likelihood(sample, 0.0, fit_xi(sample, 0.0));
    CHECK(best <= mixture_neg_log_likelihood(sample, 0.0, xi * 1.3));
    CHECK(best <= mixture_neg_log_likelihood(sample, 0.0, xi * 0.7));
  }
}

TEST_CASE("too few p-values fall back to 0.5 / 0.5") {
  const auto fit = fit_beta_mixture(std::vector<double>(19, 0.3));
  CHECK(fit.fallback);
  CHECK(fit.pi0 == 0.5);
  CHECK(fit.xi == 0.5);
  CHECK(fit.count == 19);
  CHECK_FALSE(fit_beta_mixture(std::vector<double>(20, 0.3)).fallback);
}

TEST_CASE("conflicting pair: the stronger claim wins") {
  const BetaMixtureFit fit{0.6, 0.1, 100, false};
  const SoftLiteral dep = literal(LiteralKind::Adjacency, 0, 1, 1e-6);
  const SoftLiteral ind = literal(LiteralKind::NonAdjacency, 1, -1, 0.3);
  CHECK(mmr_score(1e-6, fit).score > mmr_score(0.3, fit).score);
  const auto report = select_consistent_literals(one_variable_problem({ind, dep}), fit);
  REQUIRE(report.decisions.size() == 2);
  CHECK(report.decisions[0].literal.dataset == 0);
  CHECK(report.decisions[0].accepted);
  CHECK_FALSE(report.decisions[1].accepted);
  CHECK(report.accepted_literals() == std::vector<Lit>{1});

  const SoftLiteral weak = literal(LiteralKind::Adjacency, 0, 1, 0.04);
  const SoftLiteral strong = literal(LiteralKind::NonAdjacency, 1, -1, 0.9);
  CHECK(mmr_score(0.9, fit).score > mmr_score(0.04, fit).score);
  const auto flipped = select_consistent_literals(one_variable_problem({weak, strong}), fit);
  CHECK(flipped.accepted_literals() == std::vector<Lit>{-1});
  CHECK(flipped.skipped() == 1);
}

TEST_CASE("adjacency claims are redirected by the score") {
  const BetaMixtureFit fit{0.6, 0.1, 100, false};
  const auto report = select_consistent_literals(one_variable_problem({literal(LiteralKind::Adjacency, 0, 1, 0.5)}), fit);
  REQUIRE(report.decisions.size() == 1);
  CHECK(report.decisions[0].flipped);
  CHECK(report.decisions[0].literal.kind == LiteralKind::NonAdjacency);
  CHECK(report.decisions[0].literal.lit == -1);
}

TEST_CASE("selection is independent of input order") {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> var(1, 4);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<SoftLiteral> soft;
    for (int i = 0; i < 12; ++i) {
      const bool dep = u(rng) < 0.5;
      SoftLiteral s = literal(dep ? LiteralKind::Adjacency : LiteralKind::NonAdjacency, i, 0, std::pow(u(rng), 3));
      const int v = var(rng);
      s.lit = dep ? v : -v;
      s.nodes = {"N" + std::to_string(v)};
      soft.push_back(s);
    }
    CnfProblem a = one_variable_problem(soft);
    a.cnf.num_vars = 4;
    a.cnf.add({1, 2});
    a.cnf.add({-3, -4});
    CnfProblem b = a;
    std::shuffle(b.soft.begin(), b.soft.end(), rng);
    const BetaMixtureFit fit{0.5, 0.2, 12, false};
    auto la = select_consistent_literals(a, fit).accepted_literals();
    auto lb = select_consistent_literals(b, fit).accepted_literals();
    CHECK(la == lb);
  }
}

TEST_CASE("strategy none rejects inconsistent input") {
  const auto ok = accept_all_literals(one_variable_problem({literal(LiteralKind::Adjacency, 0, 1, 0.9)}));
  CHECK(ok.accepted_literals() == std::vector<Lit>{1});
  CHECK_FALSE(ok.decisions[0].flipped);
  CHECK_THROWS_AS(accept_all_literals(one_variable_problem({literal(LiteralKind::Adjacency, 0, 1, 0.0),
                                                            literal(LiteralKind::NonAdjacency, 1, -1, 1.0)})),
                  DegenerateInputError);
  CHECK(strategy_from_string("none") == Strategy::None);
  CHECK_THROWS_AS(strategy_from_string("greedy"), InputError);
}
