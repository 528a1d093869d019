#include <benchmark/benchmark.h>

#include "stiefel_sr/cutlocus.hpp"
#include "stiefel_sr/geodesic.hpp"
#include "stiefel_sr/random.hpp"

using namespace stiefel_sr;

static void BM_ExpmSkew(benchmark::State& state) {
  Rng rng(1);
  const SkewHermitianMatrix x = random_skew(state.range(0), FieldMode::complex, rng);
  for (auto _ : state) benchmark::DoNotOptimize(expm_skew(x, 0.7));
}
BENCHMARK(BM_ExpmSkew)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_NormalGeodesic(benchmark::State& state) {
  Rng rng(2);
  const Index n = state.range(0);
  const GeodesicSpec spec(random_block_velocity(n, n / 2, FieldMode::complex, rng));
  for (auto _ : state) benchmark::DoNotOptimize(normal_geodesic(spec, 1.3));
}
BENCHMARK(BM_NormalGeodesic)->Arg(2)->Arg(4)->Arg(8);

static void BM_EvaluatorSweep(benchmark::State& state) {
  Rng rng(3);
  const GeodesicEvaluator eval{
      GeodesicSpec(random_block_velocity(6, 3, FieldMode::complex, rng))};
  for (auto _ : state) {
    for (int i = 0; i < 128; ++i) benchmark::DoNotOptimize(eval.columns(0.05 * i));
  }
}
BENCHMARK(BM_EvaluatorSweep);

static void BM_SearchV21Antipode(benchmark::State& state) {
  DenseMatrix cols(2, 1);
  cols << -1.0, 0.0;
  const StiefelPoint target(cols);
  SearchOptions options;
  options.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(search_minimizers(target, options));
}
BENCHMARK(BM_SearchV21Antipode)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
