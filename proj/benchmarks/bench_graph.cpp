#include <benchmark/benchmark.h>

#include <map>

#include "sfg/graph.hpp"
#include "sfg/hierarchy.hpp"
#include "sfg/rng.hpp"
#include "sfg/sampling.hpp"

namespace {

const sfg::SampleInstance& instance_of_side(double n) {
  static std::map<double, sfg::SampleInstance> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const sfg::RadiusLaw law = sfg::RadiusLaw::pareto(2.0, 1.0);
    it = cache.emplace(n, sfg::sample_instance(2, n, 1.0, law, 4711)).first;
  }
  return it->second;
}

void BM_BuildFullGraph(benchmark::State& state) {
  const auto& instance = instance_of_side(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::build_full_graph(instance).edge_count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(instance.size()));
}
BENCHMARK(BM_BuildFullGraph)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_BuildFullGraphExhaustive(benchmark::State& state) {
  const auto& instance = instance_of_side(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::build_full_graph_exhaustive(instance).edge_count());
  }
}
BENCHMARK(BM_BuildFullGraphExhaustive)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_BuildThinnedGraph(benchmark::State& state) {
  const auto& instance = instance_of_side(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::build_thinned_graph(instance).edge_count());
  }
}
BENCHMARK(BM_BuildThinnedGraph)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_LongestDescendingChain(benchmark::State& state) {
  const auto& instance = instance_of_side(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::longest_descending_chain(instance).length());
  }
}
BENCHMARK(BM_LongestDescendingChain)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_BuildBackbone(benchmark::State& state) {
  const sfg::RadiusLaw law = sfg::RadiusLaw::pareto(2.0, 150.0);
  const sfg::SampleInstance instance = sfg::sample_instance(2, 64.0, 1.0, law, 99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::build_backbone(instance).backbone.size());
  }
}
BENCHMARK(BM_BuildBackbone)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
