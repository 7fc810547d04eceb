#include <benchmark/benchmark.h>

#include "coex/region.hpp"

namespace {

coex::RegionScanSpec spec_for(int family, int steps) {
  coex::RegionScanSpec spec;
  spec.family = static_cast<coex::Family>(family);
  if (spec.family == coex::Family::dim3_sum) {
    spec.s = {0.0, coex::dim3_s_max(), steps};
    spec.t = {0.0, coex::dim3_t_max(), steps};
  } else {
    spec.s = {0.0, 1.0, steps};
    spec.t = {0.0, 1.0, steps};
  }
  if (spec.family == coex::Family::scaled_rank1) spec.copies = 3;
  return spec;
}

void BM_ScanSerial(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(coex::scan_region_serial(spec));
  state.SetItemsProcessed(state.iterations() * state.range(1) * state.range(1));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(coex::scan_region(spec));
  state.SetItemsProcessed(state.iterations() * state.range(1) * state.range(1));
}

// Arguments: family index (dim3_sum, dim4_sandwich, scaled_rank1), grid steps per axis.
void grid_args(benchmark::internal::Benchmark* b) {
  for (int family : {0, 1, 2})
    for (int steps : {50, 200}) b->Args({family, steps});
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Apply(grid_args);
BENCHMARK(BM_ScanParallel)->Apply(grid_args);

BENCHMARK_MAIN();
