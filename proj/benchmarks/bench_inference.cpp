#include <benchmark/benchmark.h>

#include "graphwise/inference.hpp"
#include "graphwise/witness.hpp"

namespace {

using namespace graphwise;

Graph chain(int d) {
  EdgeSet edges;
  for (int j = 1; j < d; ++j) edges.push_back(make_edge(j, j + 1));
  return Graph(d, std::move(edges));
}

void BM_BootstrapStatistics(benchmark::State& state) {
  int d = 100, n = static_cast<int>(state.range(0));
  PrecisionModel model(0.45, chain(d));
  Dataset data = sample(model, n, 3);
  PrecisionEstimate est;
  est.matrix = model.matrix();
  est.raw = model.matrix();
  EdgeSet edges = chain(d).edges();
  BootstrapConfig cfg;
  cfg.replications = 3000;
  cfg.seed = 1;
  for (auto _ : state) {
    auto stats = bootstrap_statistics(data, est, edges, cfg);
    benchmark::DoNotOptimize(stats.data());
  }
}
BENCHMARK(BM_BootstrapStatistics)->Arg(200)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_StepDown(benchmark::State& state) {
  int d = 50, n = 400;
  PrecisionModel model(0.45, chain(d));
  Dataset data = sample(model, n, 5);
  PrecisionEstimate est;
  est.matrix = model.matrix();
  est.raw = model.matrix();
  EdgeSet edges = chain(d).edges();
  BootstrapConfig cfg;
  cfg.replications = 1000;
  cfg.seed = 2;
  for (auto _ : state) {
    auto outcome = step_down(data, est, edges, cfg);
    benchmark::DoNotOptimize(outcome.reject);
  }
}
BENCHMARK(BM_StepDown)->Unit(benchmark::kMillisecond);

void BM_WitnessTest(benchmark::State& state) {
  int d = 50, n = 300;
  PrecisionModel model(0.45, chain(d));
  Dataset data = sample(model, n, 11);
  WitnessTestSpec spec;
  spec.property = GraphProperty::connectivity;
  spec.lambda = LambdaPolicy::scaled(1.5);
  spec.clime.tolerance = 1e-5;
  spec.bootstrap.replications = 1000;
  spec.bootstrap.seed = 9;
  for (auto _ : state) {
    auto outcome = run_witness_test(data, spec);
    benchmark::DoNotOptimize(outcome.reject);
  }
}
BENCHMARK(BM_WitnessTest)->Unit(benchmark::kMillisecond);

}  // namespace
