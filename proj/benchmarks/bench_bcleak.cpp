#include <benchmark/benchmark.h>

#include <vector>

#include <bcleak/blackwell.hpp>
#include <bcleak/fme.hpp>
#include <bcleak/regions.hpp>
#include <bcleak/search.hpp>

using namespace bcleak;

static void bm_fme_derivation(benchmark::State& state) {
  const IneqSystem sys = achievability_system();
  const auto order = achievability_elimination_order();
  for (auto _ : state) benchmark::DoNotOptimize(eliminate_all(sys, order));
}
BENCHMARK(bm_fme_derivation)->Unit(benchmark::kMillisecond);

static void bm_bwc_threshold(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bwc_saturation_threshold(0.1));
}
BENCHMARK(bm_bwc_threshold)->Unit(benchmark::kMillisecond);

static void bm_bwc_sumrate(benchmark::State& state) {
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(0.0075 * k);
  for (auto _ : state) benchmark::DoNotOptimize(bwc_sumrate_curve(grid));
}
BENCHMARK(bm_bwc_sumrate)->Unit(benchmark::kMillisecond);

static void bm_union_frontier(benchmark::State& state) {
  const SearchBudget budget{4, 64, 8, 1};
  const UnionOptions opts{2, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(union_frontier(RegionId::sd0, blackwell(), {0.1, 0.1}, budget, opts));
}
BENCHMARK(bm_union_frontier)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
