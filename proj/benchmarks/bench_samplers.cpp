#include <benchmark/benchmark.h>

#include "sfg/rng.hpp"
#include "sfg/sampling.hpp"
#include "sfg/typical_samplers.hpp"

namespace {

void BM_Poisson(benchmark::State& state) {
  sfg::Rng rng(1);
  const double mean = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rng.poisson(mean));
}
BENCHMARK(BM_Poisson)->Arg(4)->Arg(100)->Arg(100000);

void BM_SampleInstance(benchmark::State& state) {
  const sfg::RadiusLaw law = sfg::RadiusLaw::pareto(2.0, 1.0);
  const double n = static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::sample_instance(2, n, 1.0, law, ++seed).size());
  }
}
BENCHMARK(BM_SampleInstance)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_TypicalOutSum(benchmark::State& state) {
  sfg::Rng rng(2);
  const sfg::RadiusLaw law = sfg::RadiusLaw::pareto(3.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::sample_typical_out_sum(1.0, 2, law, rng));
  }
}
BENCHMARK(BM_TypicalOutSum);

void BM_TypicalInSum(benchmark::State& state) {
  sfg::Rng rng(3);
  const sfg::RadiusLaw law = sfg::RadiusLaw::pareto(4.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfg::sample_typical_in_sum(2.0, 2, law, rng));
  }
}
BENCHMARK(BM_TypicalInSum);

void BM_ThinnedOriginSample(benchmark::State& state) {
  sfg::Rng rng(4);
  const sfg::RadiusLaw law = sfg::RadiusLaw::pareto(2.0, 1.0);
  const double n = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sfg::thinned_origin_sample(0.0, 2, n, 1.0, law, rng).thinned_out_sum);
  }
}
BENCHMARK(BM_ThinnedOriginSample)->Arg(64)->Arg(1024);

}  // namespace
