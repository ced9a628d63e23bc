#include <benchmark/benchmark.h>

#include "transvecta/radical_tower.hpp"

using namespace transvecta;

static void BM_OrbitVerify(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbit_verify(-1, 1, 2, depth));
  }
}
BENCHMARK(BM_OrbitVerify)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_TowerSign(benchmark::State& state) {
  const TowerContext k = TowerContext::over_rationals(2).extend(TowerElement{TowerElement(3), TowerElement(1)});
  const TowerElement x{TowerElement{TowerElement(-7), TowerElement(5)}, TowerElement{TowerElement(1), TowerElement(-1)}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.sign(x));
  }
}
BENCHMARK(BM_TowerSign);

static void BM_IdentityCheck(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(m0_identity_check());
  }
}
BENCHMARK(BM_IdentityCheck);
