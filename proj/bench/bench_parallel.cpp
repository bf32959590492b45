// Serial reference against the OpenMP versions of the two data-parallel
// kernels: curvature grids and the seed fan-out of the search.

#include <cmath>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "htrans/grid.hpp"
#include "htrans/search.hpp"
#include "htrans/surfaces.hpp"

namespace {

using namespace htrans;

Surface grid_surface() { return scherk(1.0, Rect{{-1.4, 1.4}, {-1.4, 1.4}}); }

template <CurvatureGrid (*Fn)(const Surface &, const GridSpec &)>
void BM_CurvatureGrid(benchmark::State &state) {
  const Surface s = grid_surface();
  const int n = static_cast<int>(state.range(0));
  const GridSpec spec{n, n, GridModel::hyperbolic};
  for (auto _ : state) {
    CurvatureGrid g = Fn(s, spec);
    benchmark::DoNotOptimize(g.points.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
  state.counters["threads"] = omp_get_max_threads();
}

search::SearchConfig small_search() {
  search::SearchConfig cfg;
  cfg.grid = 17;
  cfg.check_grid = 33;
  cfg.max_iterations = 40;
  return cfg;
}

template <std::vector<search::SeedRun> (*Fn)(const search::SeedPlan &, const search::SearchConfig &)>
void BM_SeedFanOut(benchmark::State &state) {
  search::SeedPlan plan = search::default_plan(TranslationKind::TypeII);
  plan.count = static_cast<int>(state.range(0));
  plan.interior_knots = 6;
  const search::SearchConfig cfg = small_search();
  for (auto _ : state) {
    auto runs = Fn(plan, cfg);
    benchmark::DoNotOptimize(runs.data());
  }
  state.SetItemsProcessed(state.iterations() * plan.count);
  state.counters["threads"] = omp_get_max_threads();
}

BENCHMARK_TEMPLATE(BM_CurvatureGrid, curvature_grid_serial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_CurvatureGrid, curvature_grid_parallel)
    ->Arg(100)
    ->Arg(400)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK_TEMPLATE(BM_SeedFanOut, search::run_seeds_serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_SeedFanOut, search::run_seeds_parallel)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
