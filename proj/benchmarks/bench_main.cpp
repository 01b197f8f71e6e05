#include <benchmark/benchmark.h>

#include <cstdint>

#include "unicycle/cperm.hpp"
#include "unicycle/cycle_enum.hpp"
#include "unicycle/experiment.hpp"
#include "unicycle/limit_law.hpp"
#include "unicycle/plane_tree.hpp"
#include "unicycle/rng.hpp"
#include "unicycle/underlying_graph.hpp"

using namespace unicycle;

namespace {

void BM_SamplePlaneTree(benchmark::State& state) {
  auto n = static_cast<uint32_t>(state.range(0));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_plane_tree(n, rng));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SamplePlaneTree)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_SampleCPerm(benchmark::State& state) {
  auto n = static_cast<uint32_t>(state.range(0));
  auto g = static_cast<uint32_t>(state.range(1));
  CountTable table(g, /*with_exact=*/n <= 2000);
  CPermSampler sampler(n + 1, g, table, SampleMode::automatic);
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(rng));
}
BENCHMARK(BM_SampleCPerm)
    ->Args({100'000, 30})
    ->Args({1'000'000, 100})
    ->Unit(benchmark::kMicrosecond);

void BM_Pipeline(benchmark::State& state) {
  auto n = static_cast<uint32_t>(state.range(0));
  auto g = static_cast<uint32_t>(state.range(1));
  CountTable table(g, /*with_exact=*/n <= 2000);
  CPermSampler sampler(n + 1, g, table, SampleMode::automatic);
  ScalingParams sp(n, g);
  auto cap = static_cast<uint64_t>(5.0 * sp.L) + 1;
  uint64_t seed = 100;
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(n, seed++, sampler, cap));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Pipeline)
    ->Args({100'000, 30})
    ->Args({1'000'000, 100})
    ->Unit(benchmark::kMillisecond);

void BM_BuildGraph(benchmark::State& state) {
  auto n = static_cast<uint32_t>(state.range(0));
  auto g = static_cast<uint32_t>(state.range(1));
  CountTable table(g, false);
  CPermSampler sampler(n + 1, g, table, SampleMode::automatic);
  Rng rng(3);
  PlaneTree tree = sample_plane_tree(n, rng);
  SparseCycles sigma = sampler.draw(rng);
  for (auto _ : state) benchmark::DoNotOptimize(build_underlying_graph(tree, sigma));
}
BENCHMARK(BM_BuildGraph)->Args({1'000'000, 100})->Unit(benchmark::kMillisecond);

void BM_Kernelize(benchmark::State& state) {
  auto n = static_cast<uint32_t>(state.range(0));
  auto g = static_cast<uint32_t>(state.range(1));
  CountTable table(g, false);
  CPermSampler sampler(n + 1, g, table, SampleMode::automatic);
  Rng rng(4);
  PlaneTree tree = sample_plane_tree(n, rng);
  SparseCycles sigma = sampler.draw(rng);
  UnderlyingGraph graph = build_underlying_graph(tree, sigma);
  for (auto _ : state) benchmark::DoNotOptimize(kernelize(graph));
}
BENCHMARK(BM_Kernelize)->Args({1'000'000, 100})->Unit(benchmark::kMillisecond);

void BM_Enumerate(benchmark::State& state) {
  auto n = static_cast<uint32_t>(state.range(0));
  auto g = static_cast<uint32_t>(state.range(1));
  CountTable table(g, false);
  CPermSampler sampler(n + 1, g, table, SampleMode::automatic);
  Rng rng(5);
  PlaneTree tree = sample_plane_tree(n, rng);
  SparseCycles sigma = sampler.draw(rng);
  Kernel kernel = kernelize(build_underlying_graph(tree, sigma));
  ScalingParams sp(n, g);
  auto cap = static_cast<uint64_t>(5.0 * sp.L) + 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_short_cycles(kernel, {.cap = cap}));
}
BENCHMARK(BM_Enumerate)->Args({1'000'000, 100})->Unit(benchmark::kMicrosecond);

void BM_CountLog(benchmark::State& state) {
  auto n = static_cast<uint64_t>(state.range(0));
  auto g = static_cast<uint32_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_cperms_log(n, g));
}
BENCHMARK(BM_CountLog)->Args({1'000'000, 100})->Args({100'000, 12'500});

}  // namespace

BENCHMARK_MAIN();
