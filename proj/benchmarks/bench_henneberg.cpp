#include <benchmark/benchmark.h>

#include "wallrig/canonical.hpp"
#include "wallrig/henneberg.hpp"

using namespace wallrig;

static void BM_Certify(benchmark::State& state) {
  auto g = random_tight(static_cast<int>(state.range(0)), 5);
  ReductionOptions opts;
  opts.brute_force_max_edges = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(certify(g, opts));
}
BENCHMARK(BM_Certify)->Args({8, 0})->Args({8, 24})->Args({32, 0})->Args({64, 0});

static void BM_RandomTight(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_tight(static_cast<int>(state.range(0)), ++seed));
}
BENCHMARK(BM_RandomTight)->RangeMultiplier(2)->Range(8, 64);

static void BM_CanonicalForm(benchmark::State& state) {
  auto g = random_tight(static_cast<int>(state.range(0)), 9);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_CanonicalForm)->DenseRange(2, 5);
