#include <benchmark/benchmark.h>

#include <numbers>

#include "transvecta/cfrac.hpp"
#include "transvecta/regions.hpp"
#include "transvecta/words.hpp"

using namespace transvecta;

static void BM_EuclidStep(benchmark::State& state) {
  const auto s = SigmaMap::power(2.0);
  Point2 p{std::numbers::pi, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(euclid_step(s, p));
  }
}
BENCHMARK(BM_EuclidStep);

static void BM_UStep(benchmark::State& state) {
  const auto s = SigmaMap::parse(state.range(0) == 0 ? "pow:2" : "sine:0.5");
  const Point2 p{std::numbers::pi, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(u_step(s, p));
  }
}
BENCHMARK(BM_UStep)->Arg(0)->Arg(1);

static void BM_Encode(benchmark::State& state) {
  const auto s = SigmaMap::power(2.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(s, {std::numbers::pi, 1.0}, n));
  }
}
BENCHMARK(BM_Encode)->Arg(10)->Arg(25);

static void BM_GoldenSlope(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(golden_slope(2.0));
  }
}
BENCHMARK(BM_GoldenSlope);

static void BM_RationalLines(benchmark::State& state) {
  const auto s = SigmaMap::power(2.0);
  const auto ts = std::vector<double>{0.25, 0.5, 0.75, 1.0};
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rational_lines(s, depth, ts, Box{0.05, 0.05, 1.0, 1.0}, AxisSide::kOx, 1));
  }
}
BENCHMARK(BM_RationalLines)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
