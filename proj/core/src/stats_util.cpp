#include "sfg/stats_util.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "sfg/errors.hpp"

namespace sfg {

void OnlineStats::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void OnlineStats::merge(const OnlineStats& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double delta = other.mean - mean;
  const auto total = count + other.count;
  m2 += other.m2 + delta * delta * static_cast<double>(count) *
                       static_cast<double>(other.count) / static_cast<double>(total);
  mean += delta * static_cast<double>(other.count) / static_cast<double>(total);
  count = total;
}

double OnlineStats::variance() const {
  return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
}

double OnlineStats::stderr_mean() const {
  return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

double mean_of(std::span<const double> values) {
  OnlineStats stats;
  for (double v : values) stats.add(v);
  return stats.mean;
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw estimation_error("median_of: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double median_of_means(std::span<const double> values, int blocks) {
  if (values.empty()) throw estimation_error("median_of_means: empty input");
  if (blocks < 1) throw parameter_error("median_of_means: blocks must be >= 1");
  const auto b = std::min<std::size_t>(static_cast<std::size_t>(blocks), values.size());
  std::vector<double> block_means;
  block_means.reserve(b);
  const std::size_t base = values.size() / b;
  std::size_t extra = values.size() % b;
  std::size_t begin = 0;
  for (std::size_t k = 0; k < b; ++k) {
    std::size_t len = base + (k < extra ? 1 : 0);
    block_means.push_back(mean_of(values.subspan(begin, len)));
    begin += len;
  }
  return median_of(std::move(block_means));
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw estimation_error("linear_fit: need at least two paired points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw estimation_error("linear_fit: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double ks_test_p(std::span<const double> sorted, const std::function<double(double)>& cdf) {
  if (sorted.empty()) throw estimation_error("ks_test_p: empty sample");
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  const double sqrt_n = std::sqrt(n);
  return kolmogorov_q((sqrt_n + 0.12 + 0.11 / sqrt_n) * d);
}

namespace {

// Sweep of the signed CDF difference F_a - F_b over the merged support.
// Handles ties by advancing both sides to the end of each tie run.
void ks_two_sample_sweep(std::span<const double> a, std::span<const double> b,
                         double* d_abs, double* d_min_signed) {
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double worst_abs = 0.0, worst_min = 0.0;
  while (i < a.size() || j < b.size()) {
    const double value = (j >= b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
    while (i < a.size() && a[i] == value) ++i;
    while (j < b.size() && b[j] == value) ++j;
    const double diff = static_cast<double>(i) / na - static_cast<double>(j) / nb;
    worst_abs = std::max(worst_abs, std::fabs(diff));
    worst_min = std::min(worst_min, diff);
  }
  if (d_abs) *d_abs = worst_abs;
  if (d_min_signed) *d_min_signed = worst_min;
}

double ks_two_sample_lambda(double d, std::size_t na, std::size_t nb) {
  const double ne = static_cast<double>(na) * static_cast<double>(nb) /
                    (static_cast<double>(na) + static_cast<double>(nb));
  const double sqrt_ne = std::sqrt(ne);
  return (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d;
}

}  // namespace

double ks_two_sample_p(std::span<const double> sorted_a, std::span<const double> sorted_b) {
  if (sorted_a.empty() || sorted_b.empty()) {
    throw estimation_error("ks_two_sample_p: empty sample");
  }
  double d = 0.0;
  ks_two_sample_sweep(sorted_a, sorted_b, &d, nullptr);
  return kolmogorov_q(ks_two_sample_lambda(d, sorted_a.size(), sorted_b.size()));
}

double ks_one_sided_p(std::span<const double> sorted_a, std::span<const double> sorted_b) {
  if (sorted_a.empty() || sorted_b.empty()) {
    throw estimation_error("ks_one_sided_p: empty sample");
  }
  double d_min = 0.0;
  ks_two_sample_sweep(sorted_a, sorted_b, nullptr, &d_min);
  // "a stochastically larger" shows up as F_a dipping below F_b.
  const double d_plus = -d_min;
  if (d_plus <= 0.0) return 1.0;
  const double lambda = ks_two_sample_lambda(d_plus, sorted_a.size(), sorted_b.size());
  return std::clamp(std::exp(-2.0 * lambda * lambda), 0.0, 1.0);
}

double chi_square_tail(double statistic, int dof) {
  if (dof < 1) throw parameter_error("chi_square_tail: dof must be >= 1");
  const boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

double poisson_gof_p(std::span<const long long> samples, double mean, double min_expected) {
  if (samples.size() < 100) throw estimation_error("poisson_gof_p: too few samples");
  long long max_value = 0;
  for (long long s : samples) {
    if (s < 0) throw parameter_error("poisson_gof_p: negative count");
    max_value = std::max(max_value, s);
  }
  std::vector<double> observed(static_cast<std::size_t>(max_value) + 1, 0.0);
  for (long long s : samples) observed[static_cast<std::size_t>(s)] += 1.0;

  const auto n = static_cast<double>(samples.size());
  std::vector<double> expected(observed.size() + 1, 0.0);
  double pmf = std::exp(-mean);
  double tail = 1.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    expected[k] = n * pmf;
    tail -= pmf;
    pmf *= mean / static_cast<double>(k + 1);
  }
  expected[observed.size()] = n * std::max(tail, 0.0);  // everything above max_value
  observed.push_back(0.0);

  // Pool consecutive bins until each pooled expectation reaches min_expected.
  std::vector<double> obs_pooled, exp_pooled;
  double o_acc = 0.0, e_acc = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    o_acc += observed[k];
    e_acc += expected[k];
    if (e_acc >= min_expected) {
      obs_pooled.push_back(o_acc);
      exp_pooled.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (obs_pooled.empty()) throw estimation_error("poisson_gof_p: degenerate binning");
    obs_pooled.back() += o_acc;
    exp_pooled.back() += e_acc;
  }
  if (obs_pooled.size() < 2) throw estimation_error("poisson_gof_p: too few bins");
  double statistic = 0.0;
  for (std::size_t k = 0; k < obs_pooled.size(); ++k) {
    const double diff = obs_pooled[k] - exp_pooled[k];
    statistic += diff * diff / exp_pooled[k];
  }
  return chi_square_tail(statistic, static_cast<int>(obs_pooled.size()) - 1);
}

}  // namespace sfg
