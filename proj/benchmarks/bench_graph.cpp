#include <benchmark/benchmark.h>

#include "graphwise/lowerbound.hpp"
#include "graphwise/rng.hpp"

namespace {

using namespace graphwise;

void BM_MaxSpanningTree(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  Rng rng(3);
  EdgeWeights w(d);
  for (int u = 1; u <= d; ++u) {
    for (int v = u + 1; v <= d; ++v) w.set(u, v, rng.uniform());
  }
  for (auto _ : state) {
    auto tree = max_spanning_tree(w, d);
    benchmark::DoNotOptimize(tree.data());
  }
}
BENCHMARK(BM_MaxSpanningTree)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_GreedyCycleSearch(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  Rng rng(5);
  EdgeWeights w(d);
  for (int u = 1; u <= d; ++u) {
    for (int v = u + 1; v <= d; ++v) w.set(u, v, rng.uniform());
  }
  for (auto _ : state) {
    auto cycle = greedy_structure_search(w, d, {StructureKind::cycle, 0});
    benchmark::DoNotOptimize(cycle->data());
  }
}
BENCHMARK(BM_GreedyCycleSearch)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_SingleEdgeChiSquare(benchmark::State& state) {
  auto family = build_family(FamilyKind::cycle, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(single_edge_chi2_bound(family.divider, 0.02, 400, 2.0));
  }
}
BENCHMARK(BM_SingleEdgeChiSquare)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_PackingEntropy(benchmark::State& state) {
  auto family = build_family(FamilyKind::cycle, 18);
  for (auto _ : state) {
    auto packing = packing_entropy(family.divider, std::log(18.0));
    benchmark::DoNotOptimize(packing.entropy);
  }
}
BENCHMARK(BM_PackingEntropy)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
