// Parallel kernels against their serial reference implementations on the
// campus-scale map. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "osmag/model.hpp"
#include "osmag/planner.hpp"
#include "osmag/reference.hpp"

using namespace osmag;

namespace {

const MapModel& campus() {
  static const MapModel m = build_model(parse_osm(fixtures::campus()));
  return m;
}

const PassageGraph& campus_graph() {
  static const PassageGraph g = build_passage_graph(campus());
  return g;
}

std::vector<const Area*> inner_leaves() {
  std::vector<const Area*> out;
  for (const Area* a : leaf_areas(campus()))
    if (a->type == AreaType::inner) out.push_back(a);
  return out;
}

void BM_RasterizeParallel(benchmark::State& state) {
  const auto leaves = inner_leaves();
  for (auto _ : state)
    for (const Area* a : leaves) benchmark::DoNotOptimize(rasterize_area(*a, kDefaultResolution));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_RasterizeSerial(benchmark::State& state) {
  const auto leaves = inner_leaves();
  for (auto _ : state)
    for (const Area* a : leaves) benchmark::DoNotOptimize(reference::rasterize_area(*a, kDefaultResolution));
}

void BM_GraphParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_passage_graph(campus()));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_GraphSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::build_passage_graph(campus()));
}

void BM_PrecomputeParallel(benchmark::State& state) {
  campus_graph();
  for (auto _ : state) benchmark::DoNotOptimize(precompute_hierarchy(campus(), campus_graph()));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_PrecomputeFlat(benchmark::State& state) {
  campus_graph();
  for (auto _ : state) benchmark::DoNotOptimize(reference::precompute_hierarchy(campus(), campus_graph()));
}

void plan_queries(benchmark::State& state, bool hierarchy) {
  static const HierarchicalCostIndex index = precompute_hierarchy(campus(), campus_graph());
  std::mt19937 rng(1);
  std::vector<std::pair<oracle::Sample, oracle::Sample>> queries;
  for (int i = 0; i < 64; ++i) queries.emplace_back(oracle::random_point(campus_graph(), rng), oracle::random_point(campus_graph(), rng));
  std::size_t i = 0;
  double search_us = 0;
  for (auto _ : state) {
    const auto& [a, b] = queries[i++ % queries.size()];
    const Route r = plan_local(campus(), campus_graph(), &index, a.point, a.height, b.point, b.height, {},
                               {.use_hierarchy = hierarchy});
    search_us += r.search_microseconds;
  }
  state.counters["search_us"] = benchmark::Counter(search_us / static_cast<double>(state.iterations()));
}

void BM_PlanHierarchy(benchmark::State& state) { plan_queries(state, true); }
void BM_PlanFlat(benchmark::State& state) { plan_queries(state, false); }

}  // namespace

BENCHMARK(BM_RasterizeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RasterizeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrecomputeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrecomputeFlat)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlanHierarchy)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PlanFlat)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
