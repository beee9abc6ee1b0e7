#include <benchmark/benchmark.h>

#include "mosaic/encode/constraints.hpp"
#include "mosaic/encode/search_graph.hpp"
#include "mosaic/fci/fci.hpp"
#include "mosaic/pipeline/pipeline.hpp"
#include "mosaic/simulate/generator.hpp"
#include "mosaic/stats/ci_test.hpp"
#include "mosaic/stats/pvalue_cache.hpp"

namespace {

mosaic::GeneratedStudy study(int variables) {
  mosaic::SimulationConfig c;
  c.variables = variables;
  c.rows = 1000;
  c.datasets = 3;
  return mosaic::generate_study(c, 42);
}

void BM_FciFisherZ(benchmark::State& state) {
  const auto s = study(static_cast<int>(state.range(0)));
  const mosaic::FisherZTest test(s.datasets[0]);
  for (auto _ : state) {
    mosaic::PValueCache cache(test);
    benchmark::DoNotOptimize(mosaic::run_fci(cache).pag.edge_count());
  }
}
BENCHMARK(BM_FciFisherZ)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Encode(benchmark::State& state) {
  const auto s = study(static_cast<int>(state.range(0)));
  std::vector<mosaic::FciResult> pags;
  std::vector<std::vector<std::string>> targets;
  for (const auto& d : s.datasets) {
    const mosaic::FisherZTest test(d);
    mosaic::PValueCache cache(test);
    pags.push_back(mosaic::run_fci(cache));
    targets.push_back(d.intervention_targets);
  }
  const mosaic::MixedGraph h = mosaic::initialize_search_graph(pags, targets);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mosaic::build_constraints(h, pags, targets).cnf.clauses.size());
  }
}
BENCHMARK(BM_Encode)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const auto s = study(static_cast<int>(state.range(0)));
  const mosaic::RunConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(mosaic::run_pipeline(s.datasets, config).summary.edges.size());
}
BENCHMARK(BM_Pipeline)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
