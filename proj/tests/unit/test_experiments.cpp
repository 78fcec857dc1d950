#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "sfg/degree_experiments.hpp"
#include "sfg/errors.hpp"
#include "sfg/graph.hpp"
#include "sfg/sampling.hpp"
#include "sfg/stats_util.hpp"
#include "sfg/torus.hpp"
#include "sfg/typical_samplers.hpp"

using namespace sfg;

TEST_CASE("out-tail experiment recovers exponent and flags light tails") {
  const TailCheck check = out_sum_tail_experiment(2, 3.0, 1.0, 1.0, 20000, 11, 2);
  CHECK(check.predicted_index == doctest::Approx(1.0));
  CHECK(check.estimate.index_hat == doctest::Approx(1.0).epsilon(0.2));
  CHECK_FALSE(check.light_tail_warning);

  const TailCheck light = out_sum_tail_experiment(2, 10.0, 1.0, 0.0, 20000, 11, 2);
  CHECK(light.predicted_index == doctest::Approx(5.0));
  CHECK(light.light_tail_warning);
}

TEST_CASE("in-tail experiment guards its preconditions") {
  CHECK_THROWS_AS(in_sum_tail_experiment(2, 2.0, 1.0, 2.0, 20000, 1, 1),
                  infinite_mean_error);
  CHECK_THROWS_AS(in_sum_tail_experiment(2, 4.0, 1.0, 0.0, 20000, 1, 1), parameter_error);
  CHECK_THROWS_AS(out_sum_tail_experiment(2, 3.0, 1.0, 1.0, 100, 1, 1), parameter_error);
}

TEST_CASE("in-degree Poisson experiment") {
  const PoissonDegreeCheck check = in_degree_poisson_experiment(2, 4.0, 1.0, 30000, 21, 2);
  CHECK(check.expected_mean == doctest::Approx(2.0 * M_PI));
  CHECK(std::fabs(check.empirical_mean - check.expected_mean) <= 3.0 * check.mean_stderr);
  CHECK(check.gof_p_value >= 1e-3);
}

TEST_CASE("regime experiment matches oracle in the moment regime") {
  const RegimeReport report =
      regime_experiment(2, 1.0, 5.0, 1.0, 1.0, {16.0, 32.0}, 2000, 31, 2);
  CHECK(report.regime == Regime::moment);
  CHECK(report.limit_value == doctest::Approx(5.0 * M_PI / 3.0));
  for (const auto& point : report.points) {
    CHECK(point.normalizer == 1.0);
    CHECK(std::fabs(point.mc_mean - point.oracle) <= 4.0 * point.mc_stderr);
  }
}

TEST_CASE("regime experiment oracle-only mode") {
  const RegimeReport report =
      regime_experiment(2, 0.0, 2.0, 1.0, 1.0, {32.0, 64.0}, 0, 31, 1);
  CHECK(report.regime == Regime::logarithmic);
  CHECK(report.points.size() == 2);
  CHECK(report.points[0].mc_mean == 0.0);
  CHECK(report.points[0].oracle > 0.0);
}

TEST_CASE("the regimes measurement equals the graph in-sum by construction") {
  // in_sum_at_location at an existing vertex must agree with in_edge_power_sum
  const RadiusLaw law = RadiusLaw::pareto(4.0, 1.0);
  const SampleInstance instance = sample_instance(2, 12.0, 1.0, law, 606);
  REQUIRE(instance.size() > 4);
  const auto g = build_full_graph(instance);
  for (std::size_t v = 0; v < std::min<std::size_t>(instance.size(), 25); ++v) {
    for (double alpha : {0.0, 1.0, 2.0}) {
      CHECK(in_sum_at_vertex(instance, v, alpha) ==
            doctest::Approx(in_edge_power_sum(g, static_cast<std::int32_t>(v), alpha)));
      CHECK(out_sum_at_location(instance, instance.location(v), instance.radius(v), alpha) -
                (alpha == 0.0 ? 1.0 : 0.0) ==
            doctest::Approx(out_edge_power_sum(g, static_cast<std::int32_t>(v), alpha)));
    }
  }
}

TEST_CASE("torus out-degree sampler matches the full-instance route (KS)") {
  const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  std::vector<double> direct, via_instance;
  for (int i = 0; i < 2000; ++i) {
    Rng rng(derive_stream(101, i));
    direct.push_back(torus_out_degree_sample(2, 16.0, 1.0, law, rng));
    Rng rng2(derive_stream(202, i));
    const double r_star = law.sample(rng2);
    const SampleInstance instance = sample_instance(2, 16.0, 1.0, law, rng2.next_u64());
    const double origin[2] = {0.0, 0.0};
    via_instance.push_back(out_sum_at_location(
        instance, origin, std::min(r_star, max_toroidal_distance(2, 16.0)), 0.0));
  }
  std::sort(direct.begin(), direct.end());
  std::sort(via_instance.begin(), via_instance.end());
  CHECK(ks_two_sample_p(direct, via_instance) >= 1e-3);
}

TEST_CASE("thinned origin sampler matches full-instance thinning (KS)") {
  const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  std::vector<double> direct, via_instance;
  for (int i = 0; i < 1500; ++i) {
    Rng rng(derive_stream(303, i));
    direct.push_back(thinned_origin_sample(0.0, 2, 16.0, 1.0, law, rng).thinned_out_sum);
    Rng rng2(derive_stream(404, i));
    const double r_star = law.sample(rng2);
    const SampleInstance instance = sample_instance(2, 16.0, 1.0, law, rng2.next_u64());
    via_instance.push_back(thinned_out_sum_at_origin(instance, r_star, 0.0));
  }
  std::sort(direct.begin(), direct.end());
  std::sort(via_instance.begin(), via_instance.end());
  CHECK(ks_two_sample_p(direct, via_instance) >= 1e-3);
}

TEST_CASE("typical-vertex samplers match the torus at desk scale (KS)") {
  // distributional convergence at n large enough that P(R > n/2) < 1e-4
  const RadiusLaw law = RadiusLaw::pareto(4.0, 1.0);
  SUBCASE("in-degree at a uniformly chosen vertex") {
    std::vector<double> sampler, torus;
    for (int i = 0; i < 2500; ++i) {
      Rng rng(derive_stream(505, i));
      sampler.push_back(sample_typical_in_sum(0.0, 2, law, rng));
      Rng rng2(derive_stream(606, i));
      const SampleInstance instance = sample_instance(2, 24.0, 1.0, law, rng2.next_u64());
      if (instance.size() == 0) continue;
      torus.push_back(in_sum_at_vertex(instance, rng2.next_below(instance.size()), 0.0));
    }
    std::sort(sampler.begin(), sampler.end());
    std::sort(torus.begin(), torus.end());
    CHECK(ks_two_sample_p(sampler, torus) >= 1e-3);
  }
  SUBCASE("out-sum at an added origin") {
    std::vector<double> sampler, torus;
    for (int i = 0; i < 2500; ++i) {
      Rng rng(derive_stream(707, i));
      sampler.push_back(sample_typical_out_sum(1.0, 2, law, rng));
      Rng rng2(derive_stream(808, i));
      const double r_star = law.sample(rng2);
      const SampleInstance instance = sample_instance(2, 24.0, 1.0, law, rng2.next_u64());
      const double origin[2] = {0.0, 0.0};
      torus.push_back(out_sum_at_location(
          instance, origin, std::min(r_star, max_toroidal_distance(2, 24.0)), 1.0));
    }
    std::sort(sampler.begin(), sampler.end());
    std::sort(torus.begin(), torus.end());
    CHECK(ks_two_sample_p(sampler, torus) >= 1e-3);
  }
}

TEST_CASE("in-ball sampling is uniform, including the wrapped case") {
  const double n = 10.0;
  Rng rng(909);
  for (double r : {3.0, 6.5}) {  // 6.5 > n/2 wraps
    const double volume = ball_cube_volume(2, std::min(r, max_toroidal_distance(2, n)),
                                           n / 2.0);
    double point[2];
    const double origin[2] = {0.0, 0.0};
    long long in_probe = 0;
    const int draws = 200000;
    const double probe_radius = 2.0;
    for (int i = 0; i < draws; ++i) {
      sample_in_ball_torus(2, n, r, rng, point);
      CHECK(toroidal_distance(2, n, point, origin) <= r + 1e-12);
      if (toroidal_distance(2, n, point, origin) <= probe_radius) ++in_probe;
    }
    // uniformity: mass of a sub-ball is proportional to its volume
    const double expected = M_PI * probe_radius * probe_radius / volume;
    const double p_hat = static_cast<double>(in_probe) / draws;
    const double se = std::sqrt(expected * (1.0 - expected) / draws);
    CHECK(std::fabs(p_hat - expected) <= 4.0 * se);
  }
}

TEST_CASE("thinned out-degree experiment trends") {
  const ThinnedReport report = thinned_out_degree_experiment(
      2, 2.0, 1.0, 0.0, {16.0, 32.0, 64.0}, 4000, 100000, 1234, 2);
  CHECK(report.points.size() == 3);
  CHECK(report.predicted_log_slope == doctest::Approx(2.0 * M_PI));
  CHECK(report.full_log_slope > 0.0);
  // thinned series is flat at desk scale
  CHECK(report.thinned_ratio == doctest::Approx(1.0).epsilon(0.15));
  for (const auto& point : report.points) {
    CHECK(point.thinned_mean < point.full_mean);
  }
  CHECK_THROWS_AS(
      thinned_out_degree_experiment(2, 2.0, 1.0, 0.0, {16.0}, 100, 100, 1, 1),
      parameter_error);
}

TEST_CASE("thinned out-degree stays bounded as beta grows") {
  // the thinned mean may move with beta but stays in a small band rather
  // than growing like the full mean does
  std::vector<double> thin_means, full_means;
  for (double beta : {1.0, 4.0, 16.0}) {
    const RadiusLaw law = RadiusLaw::pareto(2.0, beta);
    OnlineStats thin, full;
    for (int i = 0; i < 4000; ++i) {
      Rng rng(derive_stream(4321 + static_cast<int>(beta), i));
      const auto sample = thinned_origin_sample(0.0, 2, 64.0, 1.0, law, rng);
      thin.add(sample.thinned_out_sum);
      full.add(sample.full_out_sum);
    }
    thin_means.push_back(thin.mean);
    full_means.push_back(full.mean);
  }
  CHECK(full_means.back() / full_means.front() > 4.0);   // full grows ~ beta
  CHECK(thin_means.back() / thin_means.front() < 2.0);   // thinned stays in a band
}
