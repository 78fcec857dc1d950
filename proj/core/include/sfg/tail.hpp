#pragma once

#include <span>
#include <string>
#include <vector>

namespace sfg {

enum class TailMethod { loglog_ccdf, hill };

std::string to_string(TailMethod method);

struct QuantileWindow {
  double lo = 0.90;
  double hi = 0.999;
};

struct TailEstimate {
  double index_hat = 0.0;     // fitted tail exponent, > 0
  double scale_hat = 0.0;     // constant C in P(X > t) ~ C t^{-index}
  double index_stderr = 0.0;  // standard error of index_hat
  TailMethod method = TailMethod::loglog_ccdf;
  QuantileWindow window;
};

// Fits the tail exponent of nonnegative samples.
//
// loglog_ccdf: least-squares on (log t, log CCDF(t)) over a log-spaced grid
// of grid_points between the window quantiles, so every decade of the window
// carries equal weight. scale_hat is exp(intercept).
//
// hill: Hill estimator on the k = floor(sqrt(N)) largest order statistics;
// the window is recorded but not used.
//
// Throws estimation_error for fewer than 1000 samples, all-equal samples, or
// a window that reaches into nonpositive values.
TailEstimate estimate_tail_index(std::span<const double> samples,
                                 TailMethod method = TailMethod::loglog_ccdf,
                                 QuantileWindow window = {}, int grid_points = 32);

// Median over the window's log-spaced grid of t^index * CCDF(t): the direct
// plug-in estimate of the limit constant when the exponent is known.
double tail_constant_at_index(std::span<const double> samples, double index,
                              QuantileWindow window = {}, int grid_points = 32);

// Empirical CCDF curve on a log-spaced grid, for plot emission.
struct CcdfCurve {
  std::vector<double> value;
  std::vector<double> ccdf;
};
CcdfCurve ccdf_curve(std::span<const double> samples, int grid_points = 200);

}  // namespace sfg
