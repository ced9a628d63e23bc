#include <benchmark/benchmark.h>

#include <cmath>

#include "transvecta/experiments.hpp"
#include "transvecta/sigma_lines.hpp"
#include "transvecta/torus.hpp"

using namespace transvecta;

static void BM_MertensExact(benchmark::State& state) {
  MertensOptions opt;
  opt.exact = true;
  opt.threads = static_cast<unsigned>(state.range(1));
  const Ratio r{1, state.range(0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mertens_count(SigmaMap::identity(), r, opt));
  }
}
BENCHMARK(BM_MertensExact)->Args({100, 1})->Args({500, 1})->Args({500, 0})->Unit(benchmark::kMillisecond);

static void BM_MertensPower2(benchmark::State& state) {
  MertensOptions opt;
  opt.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mertens_count(SigmaMap::power(2.0), 1.0 / static_cast<double>(state.range(0)), opt));
  }
}
BENCHMARK(BM_MertensPower2)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_DensityCoverage(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(density_coverage(SigmaMap::power(2.0), depth, Grid2{}, kCoverageParameters, 1));
  }
}
BENCHMARK(BM_DensityCoverage)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_AOfWord(benchmark::State& state) {
  const WordSpec w = WordSpec::parse("vh:hvv");
  for (auto _ : state) {
    benchmark::DoNotOptimize(a_of_word(2.0, w));
  }
}
BENCHMARK(BM_AOfWord);

static void BM_TorusOrbitAverage(benchmark::State& state) {
  const TorusMaps m{CircleMap::sine(0.5), CircleMap::constant(std::sqrt(2.0) - 1)};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbit_average(m, TrigPoly::cosine(1), TrigPoly::cosine(1), {0.2, 0.3}, n));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_TorusOrbitAverage)->Arg(100000)->Unit(benchmark::kMillisecond);
