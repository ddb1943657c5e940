#include <benchmark/benchmark.h>

#include "graphwise/estimation.hpp"
#include "graphwise/witness.hpp"

namespace {

using namespace graphwise;

Graph chain(int d) {
  EdgeSet edges;
  for (int j = 1; j < d; ++j) edges.push_back(make_edge(j, j + 1));
  return Graph(d, std::move(edges));
}

Eigen::MatrixXd chain_covariance(int d, int n) {
  PrecisionModel model(0.45, chain(d));
  Dataset data = sample(model, n, 7);
  return empirical_covariance(data);
}

void BM_ClimeFull(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  auto sigma = chain_covariance(d, 2 * d);
  ClimeConfig cfg;
  cfg.lambda = LambdaPolicy::scaled(1.5).resolve(d, 2 * d);
  cfg.tolerance = 1e-5;
  for (auto _ : state) {
    auto est = clime(sigma, cfg);
    benchmark::DoNotOptimize(est.matrix.data());
  }
}
BENCHMARK(BM_ClimeFull)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ClimeColumnLp(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  auto sigma = chain_covariance(d, 4 * d);
  for (auto _ : state) {
    auto beta = clime_column_lp(sigma, 1, 0.1);
    benchmark::DoNotOptimize(beta.data());
  }
}
BENCHMARK(BM_ClimeColumnLp)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Debias(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  PrecisionModel model(0.45, chain(d));
  auto sigma = chain_covariance(d, 2 * d);
  PrecisionEstimate est;
  est.matrix = model.matrix();
  est.raw = model.matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(debias(sigma, est, 1, 2));
  }
}
BENCHMARK(BM_Debias)->Arg(100);

}  // namespace
