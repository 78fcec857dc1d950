#include <benchmark/benchmark.h>

#include <map>

#include "sfg/graph.hpp"
#include "sfg/paths.hpp"
#include "sfg/rng.hpp"
#include "sfg/sampling.hpp"

namespace {

struct PathFixture {
  sfg::SampleInstance instance;
  sfg::DirectedGeometricGraph graph;

  explicit PathFixture(double n)
      : instance(sfg::sample_instance(2, n, 1.0, sfg::RadiusLaw::pareto(4.0, 50.0), 11)),
        graph(sfg::build_full_graph(instance)) {}
};

const PathFixture& fixture_of_side(double n) {
  static std::map<double, PathFixture> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, PathFixture(n)).first;
  return it->second;
}

void BM_PairDistance(benchmark::State& state) {
  const auto& fix = fixture_of_side(static_cast<double>(state.range(0)));
  sfg::PairDistances oracle(fix.graph);
  sfg::Rng rng(5);
  const auto count = fix.instance.size();
  for (auto _ : state) {
    const auto a = static_cast<std::int32_t>(rng.next_below(count));
    const auto b = static_cast<std::int32_t>(rng.next_below(count));
    benchmark::DoNotOptimize(oracle.hops(a, b));
  }
}
BENCHMARK(BM_PairDistance)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_CrossingDistance(benchmark::State& state) {
  const auto& fix = fixture_of_side(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::crossing_distance(fix.instance, fix.graph).hops);
  }
}
BENCHMARK(BM_CrossingDistance)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_Components(benchmark::State& state) {
  const auto& fix = fixture_of_side(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::weakly_connected_components(fix.graph).size());
  }
}
BENCHMARK(BM_Components)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace
