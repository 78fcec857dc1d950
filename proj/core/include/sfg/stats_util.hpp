#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sfg {

// Welford accumulator with an associative merge, so parallel replication
// folds give the same result in any grouping.
struct OnlineStats {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const OnlineStats& other);
  double variance() const;  // sample variance (n-1)
  double stderr_mean() const;
};

double mean_of(std::span<const double> values);
double median_of(std::vector<double> values);  // takes a copy, sorts

// Median of `blocks` contiguous block means; robust location estimate for
// heavy-tailed replication outputs.
double median_of_means(std::span<const double> values, int blocks = 16);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// --- goodness-of-fit helpers ---

// Complement of the asymptotic Kolmogorov distribution, Q(lambda).
double kolmogorov_q(double lambda);

// One-sample KS p-value of `sorted` against a CDF.
double ks_test_p(std::span<const double> sorted, const std::function<double(double)>& cdf);

// Two-sample KS p-value (both inputs sorted ascending).
double ks_two_sample_p(std::span<const double> sorted_a, std::span<const double> sorted_b);

// One-sided two-sample KS p-value for H1: "a is stochastically larger than b"
// (rejects when the empirical CDF of a falls below that of b somewhere).
double ks_one_sided_p(std::span<const double> sorted_a, std::span<const double> sorted_b);

// Chi-square upper tail probability.
double chi_square_tail(double statistic, int dof);

// Chi-square goodness of fit of integer samples against Poisson(mean);
// consecutive bins are pooled until every expected count reaches
// min_expected. Returns the p-value.
double poisson_gof_p(std::span<const long long> samples, double mean,
                     double min_expected = 5.0);

}  // namespace sfg
