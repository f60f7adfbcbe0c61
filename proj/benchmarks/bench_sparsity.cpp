#include <benchmark/benchmark.h>

#include "wallrig/henneberg.hpp"
#include "wallrig/sparsity.hpp"

using namespace wallrig;

static void BM_FastVerdictTight(benchmark::State& state) {
  auto g = random_tight(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(fast_verdict(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FastVerdictTight)->RangeMultiplier(2)->Range(4, 128)->Complexity();

static void BM_BruteForceVerdict(benchmark::State& state) {
  auto g = random_tight(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_verdict(g));
}
BENCHMARK(BM_BruteForceVerdict)->DenseRange(3, 9, 2);
