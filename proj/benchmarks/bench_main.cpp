#include <benchmark/benchmark.h>

#include "fragmark/fragmark.h"

using namespace fragmark;

namespace {
const KeySet kKeys{0x0123456789ABCDEFULL, 0xFEDCBA9876543210ULL, 0x0F1E2D3C4B5A6978ULL};
}

static void BM_BuildDeneighborhood(benchmark::State& state) {
  const BlockGrid grid(256, 256);
  const int r = int(state.range(0));
  std::uint64_t key = 1;
  for (auto _ : state) benchmark::DoNotOptimize(build_deneighborhood_mapping(key++, grid, r));
}
BENCHMARK(BM_BuildDeneighborhood)->Arg(21)->Arg(101)->Unit(benchmark::kMillisecond);

static void BM_Embed(benchmark::State& state) {
  const GrayImage img = synthetic_image(1, 512, 512);
  const BlockMapping m = build_deneighborhood_mapping(kKeys.k3, img.grid(), 101);
  for (auto _ : state) benchmark::DoNotOptimize(embed(img, kKeys, m));
}
BENCHMARK(BM_Embed)->Unit(benchmark::kMillisecond);

static void BM_AuthenticateAndRecover(benchmark::State& state) {
  const GrayImage img = synthetic_image(2, 512, 512);
  const BlockMapping m = build_deneighborhood_mapping(kKeys.k3, img.grid(), 101);
  const GrayImage tampered =
      apply_square_tamper(embed(img, kKeys, m).image, {{3, 5}, 100}, 7).image;
  for (auto _ : state) {
    const auto report = authenticate(tampered, kKeys, m);
    benchmark::DoNotOptimize(recover(tampered, report, kKeys, m));
  }
}
BENCHMARK(BM_AuthenticateAndRecover)->Unit(benchmark::kMillisecond);

static void BM_AverageRecoveryRate(benchmark::State& state) {
  const int l = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(average_recovery_rate({256, 101, l, kReferenceOrigin}));
  }
}
BENCHMARK(BM_AverageRecoveryRate)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
