#include <benchmark/benchmark.h>

#include <random>

#include "mosaic/solve/backbone.hpp"
#include "mosaic/solve/sat.hpp"

namespace {

mosaic::Cnf random_3cnf(int vars, double ratio, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> var(1, vars);
  std::bernoulli_distribution sign(0.5);
  mosaic::Cnf cnf;
  cnf.num_vars = vars;
  const int clauses = static_cast<int>(vars * ratio);
  for (int c = 0; c < clauses; ++c) {
    mosaic::Clause clause;
    for (int k = 0; k < 3; ++k) clause.push_back(sign(rng) ? var(rng) : -var(rng));
    cnf.add(clause);
  }
  return cnf;
}

void BM_CdclRandom3Sat(benchmark::State& state) {
  const mosaic::Cnf cnf = random_3cnf(static_cast<int>(state.range(0)), 4.26, 7);
  for (auto _ : state) benchmark::DoNotOptimize(mosaic::check_sat(cnf).result);
}
BENCHMARK(BM_CdclRandom3Sat)->Arg(50)->Arg(100)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_Backbone(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mosaic::Cnf cnf = random_3cnf(n, 3.0, 11);
  std::vector<int> all;
  for (int v = 1; v <= n; ++v) all.push_back(v);
  if (mosaic::check_sat(cnf).result != mosaic::SatResult::Sat) {
    state.SkipWithError("instance is unsatisfiable");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(mosaic::compute_backbone(cnf, {}, all).solver_calls);
}
BENCHMARK(BM_Backbone)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
