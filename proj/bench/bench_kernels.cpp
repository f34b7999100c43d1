// Serial reference vs OpenMP version of each parallel kernel.
#include <benchmark/benchmark.h>

#include "dualcube/harness.hpp"
#include "dualcube/oracle.hpp"
#include "dualcube/sampling.hpp"

using namespace dualcube;

namespace {

void BM_Connectivity(benchmark::State& state, bool parallel) {
  DualCube d(static_cast<int>(state.range(0)));
  const Graph& g = d.graph();
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? oracle::vertex_connectivity(g) : oracle::vertex_connectivity_serial(g));
  }
}

// Sizes below the r = 2 formula, so the search sweeps every subset.
void BM_CutSearch(benchmark::State& state, bool parallel) {
  DualCube d(static_cast<int>(state.range(0)));
  const Graph& g = d.graph();
  int size = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto w = parallel ? oracle::exhaustive_cut_search(g, size, 2) : oracle::exhaustive_cut_search_serial(g, size, 2);
    benchmark::DoNotOptimize(w);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * oracle::binomial(g.order(), size)));
}

void BM_TreeBatch(benchmark::State& state, bool parallel) {
  DualCube d(static_cast<int>(state.range(0)));
  auto sets = stratified_sample(d, 4, 400, 1);
  for (auto _ : state) {
    BatchSummary s = parallel ? run_tree_batch(d, sets) : run_tree_batch_serial(d, sets);
    benchmark::DoNotOptimize(s.passed);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * sets.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Connectivity, serial, false)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Connectivity, parallel, true)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CutSearch, serial, false)->Args({3, 3})->Args({4, 3})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CutSearch, parallel, true)->Args({3, 3})->Args({4, 3})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TreeBatch, serial, false)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TreeBatch, parallel, true)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
