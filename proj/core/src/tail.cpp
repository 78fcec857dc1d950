#include "sfg/tail.hpp"

#include <algorithm>
#include <cmath>

#include "sfg/errors.hpp"
#include "sfg/stats_util.hpp"

namespace sfg {

std::string to_string(TailMethod method) {
  return method == TailMethod::loglog_ccdf ? "loglog-ccdf" : "hill";
}

namespace {

std::vector<double> sorted_copy(std::span<const double> samples) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

double quantile_of_sorted(const std::vector<double>& sorted, double q) {
  const auto idx = static_cast<std::size_t>(
      std::min<double>(q * static_cast<double>(sorted.size()),
                       static_cast<double>(sorted.size() - 1)));
  return sorted[idx];
}

// Fraction of samples strictly above t.
double ccdf_at(const std::vector<double>& sorted, double t) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

TailEstimate fit_loglog(const std::vector<double>& sorted, QuantileWindow window,
                        int grid_points) {
  const double t_lo = quantile_of_sorted(sorted, window.lo);
  const double t_hi = quantile_of_sorted(sorted, window.hi);
  if (!(t_lo > 0.0)) {
    throw estimation_error("estimate_tail_index: window reaches nonpositive values");
  }
  if (!(t_hi > t_lo)) {
    throw estimation_error("estimate_tail_index: degenerate fitting window");
  }
  std::vector<double> log_t, log_ccdf;
  const double step = (std::log(t_hi) - std::log(t_lo)) / (grid_points - 1);
  for (int k = 0; k < grid_points; ++k) {
    const double t = std::exp(std::log(t_lo) + step * k);
    const double p = ccdf_at(sorted, t);
    if (p <= 0.0) break;
    log_t.push_back(std::log(t));
    log_ccdf.push_back(std::log(p));
  }
  if (log_t.size() < 8) {
    throw estimation_error("estimate_tail_index: too few usable grid points in window");
  }
  const LinearFit fit = linear_fit(log_t, log_ccdf);
  if (!(fit.slope < 0.0)) {
    throw estimation_error("estimate_tail_index: CCDF slope is not negative");
  }
  TailEstimate estimate;
  estimate.index_hat = -fit.slope;
  estimate.scale_hat = std::exp(fit.intercept);
  estimate.index_stderr = fit.slope_stderr;
  estimate.method = TailMethod::loglog_ccdf;
  estimate.window = window;
  return estimate;
}

TailEstimate fit_hill(const std::vector<double>& sorted, QuantileWindow window) {
  const auto n = sorted.size();
  const auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  const double threshold = sorted[n - k - 1];
  if (!(threshold > 0.0)) {
    throw estimation_error("estimate_tail_index: hill threshold is nonpositive");
  }
  double acc = 0.0;
  for (std::size_t i = n - k; i < n; ++i) acc += std::log(sorted[i] / threshold);
  if (!(acc > 0.0)) throw estimation_error("estimate_tail_index: degenerate upper order statistics");
  const double index = static_cast<double>(k) / acc;
  TailEstimate estimate;
  estimate.index_hat = index;
  // Match P(X > threshold) = k/n to C threshold^{-index}.
  estimate.scale_hat =
      static_cast<double>(k) / static_cast<double>(n) * std::pow(threshold, index);
  estimate.index_stderr = index / std::sqrt(static_cast<double>(k));
  estimate.method = TailMethod::hill;
  estimate.window = window;
  return estimate;
}

}  // namespace

TailEstimate estimate_tail_index(std::span<const double> samples, TailMethod method,
                                 QuantileWindow window, int grid_points) {
  if (samples.size() < 1000) {
    throw estimation_error("estimate_tail_index: need at least 1000 samples");
  }
  if (!(window.lo > 0.0 && window.lo < window.hi && window.hi < 1.0)) {
    throw parameter_error("estimate_tail_index: window must satisfy 0 < lo < hi < 1");
  }
  if (grid_points < 8) throw parameter_error("estimate_tail_index: need >= 8 grid points");
  const auto sorted = sorted_copy(samples);
  if (sorted.front() == sorted.back()) {
    throw estimation_error("estimate_tail_index: all samples equal");
  }
  if (sorted.front() < 0.0) {
    throw estimation_error("estimate_tail_index: negative samples");
  }
  return method == TailMethod::loglog_ccdf ? fit_loglog(sorted, window, grid_points)
                                           : fit_hill(sorted, window);
}

double tail_constant_at_index(std::span<const double> samples, double index,
                              QuantileWindow window, int grid_points) {
  if (samples.size() < 1000) {
    throw estimation_error("tail_constant_at_index: need at least 1000 samples");
  }
  const auto sorted = sorted_copy(samples);
  const double t_lo = quantile_of_sorted(sorted, window.lo);
  const double t_hi = quantile_of_sorted(sorted, window.hi);
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
    throw estimation_error("tail_constant_at_index: degenerate window");
  }
  std::vector<double> products;
  const double step = (std::log(t_hi) - std::log(t_lo)) / (grid_points - 1);
  for (int k = 0; k < grid_points; ++k) {
    const double t = std::exp(std::log(t_lo) + step * k);
    const double p = ccdf_at(sorted, t);
    if (p <= 0.0) break;
    products.push_back(std::pow(t, index) * p);
  }
  if (products.empty()) throw estimation_error("tail_constant_at_index: empty window");
  return median_of(std::move(products));
}

CcdfCurve ccdf_curve(std::span<const double> samples, int grid_points) {
  CcdfCurve curve;
  if (samples.empty()) return curve;
  const auto sorted = sorted_copy(samples);
  double lo = sorted.front();
  const double hi = sorted.back();
  if (!(lo > 0.0)) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), 0.0);
    if (it == sorted.end()) return curve;
    lo = *it;
  }
  if (!(hi > lo)) return curve;
  const double step = (std::log(hi) - std::log(lo)) / (grid_points - 1);
  for (int k = 0; k < grid_points; ++k) {
    const double t = std::exp(std::log(lo) + step * k);
    const double p = ccdf_at(sorted, t);
    if (p <= 0.0) break;
    curve.value.push_back(t);
    curve.ccdf.push_back(p);
  }
  return curve;
}

}  // namespace sfg
