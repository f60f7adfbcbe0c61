#include <benchmark/benchmark.h>

#include "wallrig/henneberg.hpp"
#include "wallrig/orbit.hpp"

using namespace wallrig;

static void BM_OrbitRank(benchmark::State& state) {
  auto g = random_tight(static_cast<int>(state.range(0)), 11);
  auto mat = build_orbit_matrix(g, random_configuration(g, 3));
  for (auto _ : state) benchmark::DoNotOptimize(rank(mat));
}
BENCHMARK(BM_OrbitRank)->RangeMultiplier(2)->Range(4, 64);

static void BM_NumericRigidity(benchmark::State& state) {
  auto g = random_tight(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(numeric_rigidity(g));
}
BENCHMARK(BM_NumericRigidity)->RangeMultiplier(2)->Range(4, 32);
