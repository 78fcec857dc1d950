#include "sfg/degree_experiments.hpp"

#include <cmath>

#include "sfg/errors.hpp"
#include "sfg/parallel.hpp"
#include "sfg/sampling.hpp"
#include "sfg/torus.hpp"
#include "sfg/typical_samplers.hpp"

namespace sfg {

namespace {

std::vector<double> draw_parallel(std::size_t draws, std::uint64_t seed, int threads,
                                  double (*sampler)(double, int, const RadiusLaw&, Rng&),
                                  double alpha, int d, const RadiusLaw& law) {
  std::vector<double> samples(draws);
  parallel_for_index(static_cast<std::int64_t>(draws), threads, [&](std::int64_t i) {
    Rng rng(derive_stream(seed, static_cast<std::uint64_t>(i)));
    samples[static_cast<std::size_t>(i)] = sampler(alpha, d, law, rng);
  });
  return samples;
}

TailCheck run_tail_fit(std::vector<double> samples, double predicted_index,
                       double predicted_constant, TailMethod method,
                       QuantileWindow window) {
  TailCheck check;
  check.draws = samples.size();
  check.predicted_index = predicted_index;
  check.predicted_constant = predicted_constant;
  check.light_tail_warning = predicted_index > 4.0;
  check.estimate = estimate_tail_index(samples, method, window);
  check.constant_hat = tail_constant_at_index(samples, predicted_index, window);
  check.curve = ccdf_curve(samples);
  return check;
}

}  // namespace

TailCheck out_sum_tail_experiment(int d, double s, double beta, double alpha,
                                  std::size_t draws, std::uint64_t seed, int threads,
                                  TailMethod method, QuantileWindow window) {
  if (draws < 10000) throw parameter_error("out_sum_tail_experiment: need >= 10^4 draws");
  const RadiusLaw law = RadiusLaw::pareto(s, beta);
  auto samples = draw_parallel(draws, seed, threads, &sample_typical_out_sum, alpha, d, law);
  const double exponent = s / (alpha + d);
  const double constant =
      std::pow(d * unit_ball_volume(d) / (alpha + d), exponent) * beta;
  return run_tail_fit(std::move(samples), exponent, constant, method, window);
}

TailCheck in_sum_tail_experiment(int d, double s, double beta, double alpha,
                                 std::size_t draws, std::uint64_t seed, int threads,
                                 TailMethod method, QuantileWindow window) {
  if (draws < 10000) throw parameter_error("in_sum_tail_experiment: need >= 10^4 draws");
  if (!(s > d)) {
    throw infinite_mean_error("in_sum_tail_experiment: P(D_in = infinity) = 1 for s <= d");
  }
  if (!(alpha > 0.0)) {
    throw parameter_error(
        "in_sum_tail_experiment: alpha must be > 0 (use in_degree_poisson_experiment)");
  }
  const RadiusLaw law = RadiusLaw::pareto(s, beta);
  auto samples = draw_parallel(draws, seed, threads, &sample_typical_in_sum, alpha, d, law);
  const double exponent = (s - d) / alpha;
  const double constant = d * unit_ball_volume(d) * beta / (s - d);
  return run_tail_fit(std::move(samples), exponent, constant, method, window);
}

PoissonDegreeCheck in_degree_poisson_experiment(int d, double s, double beta,
                                                std::size_t draws, std::uint64_t seed,
                                                int threads) {
  if (!(s > d)) {
    throw infinite_mean_error("in_degree_poisson_experiment: requires s > d");
  }
  const RadiusLaw law = RadiusLaw::pareto(s, beta);
  std::vector<long long> counts(draws);
  parallel_for_index(static_cast<std::int64_t>(draws), threads, [&](std::int64_t i) {
    Rng rng(derive_stream(seed, static_cast<std::uint64_t>(i)));
    counts[static_cast<std::size_t>(i)] =
        static_cast<long long>(sample_typical_in_sum(0.0, d, law, rng));
  });
  PoissonDegreeCheck check;
  check.draws = draws;
  check.expected_mean = in_sum_poisson_mean(d, law);
  OnlineStats stats;
  for (long long c : counts) stats.add(static_cast<double>(c));
  check.empirical_mean = stats.mean;
  check.mean_stderr = stats.stderr_mean();
  check.gof_p_value = poisson_gof_p(counts, check.expected_mean);
  return check;
}

RegimeReport regime_experiment(int d, double alpha, double s, double beta, double lambda,
                               const std::vector<double>& n_grid, std::int64_t replications,
                               std::uint64_t seed, int threads) {
  if (n_grid.empty()) throw parameter_error("regime_experiment: empty n grid");
  const RadiusLaw law = RadiusLaw::pareto(s, beta);
  RegimeReport report;
  report.d = d;
  report.alpha = alpha;
  report.s = s;
  report.beta = beta;
  report.regime = classify_regime(d, alpha, s);
  switch (report.regime) {
    case Regime::moment:
      report.limit_value = campbell_mean_limit(d, alpha, law);
      break;
    case Regime::logarithmic:
      report.limit_value = d * unit_ball_volume(d) * beta;
      break;
    case Regime::polynomial:
      report.limit_value = polynomial_regime_target(d, alpha, s, beta);
      break;
  }
  std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
  for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
    const double n = n_grid[ni];
    RegimePoint point;
    point.n = n;
    point.oracle = campbell_mean_oracle(d, n, alpha, law);
    switch (report.regime) {
      case Regime::moment: point.normalizer = 1.0; break;
      case Regime::logarithmic: point.normalizer = 1.0 / std::log(n); break;
      case Regime::polynomial: point.normalizer = std::pow(n, s - alpha - d); break;
    }
    if (replications > 0) {
      const std::uint64_t level_seed = derive_stream(seed, ni);
      std::vector<double> values(static_cast<std::size_t>(replications));
      parallel_for_index(replications, threads, [&](std::int64_t r) {
        Rng rng(derive_stream(level_seed, static_cast<std::uint64_t>(r)));
        const SampleInstance instance =
            sample_instance(d, n, lambda, law, rng.next_u64());
        values[static_cast<std::size_t>(r)] =
            in_sum_at_location(instance, origin.data(), alpha);
      });
      OnlineStats stats;
      for (double v : values) stats.add(v);
      point.mc_mean = stats.mean;
      point.mc_stderr = stats.stderr_mean();
      point.mc_mom = median_of_means(values, 16);
    }
    report.points.push_back(point);
  }
  return report;
}

ThinnedReport thinned_out_degree_experiment(int d, double s, double beta, double alpha,
                                            const std::vector<double>& n_grid,
                                            std::int64_t replications,
                                            std::int64_t full_replications,
                                            std::uint64_t seed, int threads) {
  if (n_grid.size() < 2) {
    throw parameter_error("thinned_out_degree_experiment: need at least two n values");
  }
  if (replications < 1) {
    throw parameter_error("thinned_out_degree_experiment: replications must be >= 1");
  }
  if (full_replications <= 0) {
    full_replications = alpha == 0.0 ? replications * 100 : replications;
  }
  const RadiusLaw law = RadiusLaw::pareto(s, beta);
  ThinnedReport report;
  report.d = d;
  report.alpha = alpha;
  report.s = s;
  report.beta = beta;
  report.predicted_log_slope = d * unit_ball_volume(d) * beta;

  for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
    const double n = n_grid[ni];
    const std::uint64_t thin_seed = derive_stream(seed, 2 * ni);
    const std::uint64_t full_seed = derive_stream(seed, 2 * ni + 1);

    std::vector<double> thinned(static_cast<std::size_t>(replications));
    parallel_for_index(replications, threads, [&](std::int64_t r) {
      Rng rng(derive_stream(thin_seed, static_cast<std::uint64_t>(r)));
      thinned[static_cast<std::size_t>(r)] =
          thinned_origin_sample(alpha, d, n, 1.0, law, rng).thinned_out_sum;
    });

    std::vector<double> full(static_cast<std::size_t>(full_replications));
    parallel_for_index(full_replications, threads, [&](std::int64_t r) {
      Rng rng(derive_stream(full_seed, static_cast<std::uint64_t>(r)));
      full[static_cast<std::size_t>(r)] = torus_out_sum_sample(alpha, d, n, 1.0, law, rng);
    });

    ThinnedPoint point;
    point.n = n;
    OnlineStats thin_stats, full_stats;
    for (double v : thinned) thin_stats.add(v);
    for (double v : full) full_stats.add(v);
    point.thinned_mean = thin_stats.mean;
    point.thinned_stderr = thin_stats.stderr_mean();
    point.full_mean = full_stats.mean;
    point.full_stderr = full_stats.stderr_mean();
    report.points.push_back(point);
  }

  std::vector<double> log_n, full_means, log_thinned;
  for (const auto& point : report.points) {
    log_n.push_back(std::log(point.n));
    full_means.push_back(point.full_mean);
    log_thinned.push_back(std::log(std::max(point.thinned_mean, 1e-12)));
  }
  const LinearFit full_fit = linear_fit(log_n, full_means);
  report.full_log_slope = full_fit.slope;
  report.full_log_slope_stderr = full_fit.slope_stderr;
  report.thinned_ratio = report.points.back().thinned_mean / report.points.front().thinned_mean;
  report.thinned_growth_exponent = linear_fit(log_n, log_thinned).slope;
  return report;
}

}  // namespace sfg
