#pragma once

#include <cstdint>
#include <vector>

#include "sfg/campbell.hpp"
#include "sfg/radius_law.hpp"
#include "sfg/stats_util.hpp"
#include "sfg/tail.hpp"

namespace sfg {

// Tail-index experiment on typical-vertex sums: draws, fit, and the limit
// law's predictions to compare against.
struct TailCheck {
  TailEstimate estimate;
  double predicted_index = 0.0;
  double predicted_constant = 0.0;
  // Direct estimate of the limit of t^{predicted_index} P(X > t): median of
  // that product over the window grid. The fitted intercept scale_hat is a
  // poor estimator of the limit constant (a small slope error is amplified
  // by t^{error} across the window), so the constant check uses this one.
  double constant_hat = 0.0;
  bool light_tail_warning = false;  // predicted index > 4: window too shallow
  std::size_t draws = 0;
  CcdfCurve curve;
};

// Out-sums via the infinite-volume sampler; predictions
//   index = s / (alpha + d),  constant = (d kappa_d / (alpha+d))^{s/(alpha+d)} beta.
TailCheck out_sum_tail_experiment(int d, double s, double beta, double alpha,
                                  std::size_t draws, std::uint64_t seed, int threads,
                                  TailMethod method = TailMethod::loglog_ccdf,
                                  QuantileWindow window = {});

// In-sums for alpha > 0 and s > d; predictions
//   index = (s - d) / alpha,  constant = d kappa_d beta / (s - d).
TailCheck in_sum_tail_experiment(int d, double s, double beta, double alpha,
                                 std::size_t draws, std::uint64_t seed, int threads,
                                 TailMethod method = TailMethod::loglog_ccdf,
                                 QuantileWindow window = {});

// alpha = 0, s > d: the in-degree is Poisson(kappa_d E R^d); mean check plus
// chi-square goodness of fit.
struct PoissonDegreeCheck {
  double expected_mean = 0.0;
  double empirical_mean = 0.0;
  double mean_stderr = 0.0;
  double gof_p_value = 0.0;
  std::size_t draws = 0;
};
PoissonDegreeCheck in_degree_poisson_experiment(int d, double s, double beta,
                                                std::size_t draws, std::uint64_t seed,
                                                int threads);

// One torus size of the regimes experiment.
struct RegimePoint {
  double n = 0.0;
  double mc_mean = 0.0;       // raw replication mean
  double mc_stderr = 0.0;
  double mc_mom = 0.0;        // median of 16 block means
  double oracle = 0.0;        // campbell_mean_oracle at this n
  double normalizer = 1.0;    // 1, 1/log n, or n^{s-alpha-d}
};

struct RegimeReport {
  int d = 2;
  double alpha = 0.0;
  double s = 0.0;
  double beta = 0.0;
  Regime regime = Regime::moment;
  double limit_value = 0.0;  // regime-specific limit of the normalized mean
  std::vector<RegimePoint> points;
};

// Monte Carlo mean of the in-sum at an added origin of full-torus instances
// against the Campbell oracle, one point per n. replications = 0 runs the
// oracle only.
RegimeReport regime_experiment(int d, double alpha, double s, double beta, double lambda,
                               const std::vector<double>& n_grid, std::int64_t replications,
                               std::uint64_t seed, int threads);

// One torus size of the thinning comparison.
struct ThinnedPoint {
  double n = 0.0;
  double full_mean = 0.0;
  double full_stderr = 0.0;
  double thinned_mean = 0.0;
  double thinned_stderr = 0.0;
};

struct ThinnedReport {
  int d = 2;
  double alpha = 0.0;
  double s = 0.0;
  double beta = 0.0;
  std::vector<ThinnedPoint> points;
  double full_log_slope = 0.0;      // slope of full mean against log n
  double full_log_slope_stderr = 0.0;
  double predicted_log_slope = 0.0; // d kappa_d beta (s = d, alpha = 0)
  double thinned_ratio = 0.0;       // final mean / first mean
  double thinned_growth_exponent = 0.0;  // log-log slope of the thinned series
};

// Typical thinned out-sum versus n with the full-graph companion series.
// full_replications = 0 defaults to 100x replications for alpha = 0 (the
// full series is a single Poisson draw per replication there).
ThinnedReport thinned_out_degree_experiment(int d, double s, double beta, double alpha,
                                            const std::vector<double>& n_grid,
                                            std::int64_t replications,
                                            std::int64_t full_replications,
                                            std::uint64_t seed, int threads);

}  // namespace sfg
