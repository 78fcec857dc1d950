#pragma once

#include "sfg/rng.hpp"

namespace sfg {

enum class RadiusLawKind { pareto, pareto_mixture };

// Heavy-tailed radius mark distribution. The canonical choice is an exact
// Pareto with P(R > t) = beta * t^{-s} for t >= x_m = beta^{1/s} and 1 below,
// so t^s P(R > t) equals beta exactly on the whole tail. The two-component
// mixture (second component with a lighter tail s2 > s) exists to probe
// estimator robustness; its tail constant is weight * beta.
class RadiusLaw {
 public:
  static RadiusLaw pareto(double s, double beta);
  static RadiusLaw pareto_mixture(double s, double beta, double weight,
                                  double s2, double beta2);

  RadiusLawKind kind() const { return kind_; }
  double s() const { return s_; }
  double beta() const { return beta_; }
  double x_m() const { return x_m_; }
  double mixture_weight() const { return weight_; }
  double s2() const { return s2_; }
  double beta2() const { return beta2_; }

  // lim t^s P(R > t); beta for pure Pareto, weight * beta for the mixture.
  double tail_constant() const;

  double tail(double t) const;  // P(R > t)
  double cdf(double t) const { return 1.0 - tail(t); }

  // E R^k; throws infinite_mean_error when the moment diverges.
  double moment(double k) const;

  double sample(Rng& rng) const;

 private:
  RadiusLawKind kind_ = RadiusLawKind::pareto;
  double s_ = 0.0;
  double beta_ = 0.0;
  double x_m_ = 0.0;
  double weight_ = 1.0;
  double s2_ = 0.0;
  double beta2_ = 0.0;
  double x_m2_ = 0.0;
};

}  // namespace sfg
