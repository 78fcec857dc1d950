#include "sfg/radius_law.hpp"

#include <cmath>

#include "sfg/errors.hpp"

namespace sfg {

namespace {

double pareto_tail(double t, double s, double beta, double x_m) {
  if (t < x_m) return 1.0;
  return beta * std::pow(t, -s);
}

double pareto_moment(double k, double s, double x_m) {
  if (k >= s) throw infinite_mean_error("RadiusLaw::moment: E R^k diverges for k >= s");
  return s * std::pow(x_m, k) / (s - k);
}

double pareto_sample(Rng& rng, double s, double x_m) {
  return x_m * std::pow(rng.next_open_closed(), -1.0 / s);
}

}  // namespace

RadiusLaw RadiusLaw::pareto(double s, double beta) {
  if (!(s > 0.0) || !(beta > 0.0)) {
    throw parameter_error("RadiusLaw::pareto: s and beta must be positive");
  }
  RadiusLaw law;
  law.kind_ = RadiusLawKind::pareto;
  law.s_ = s;
  law.beta_ = beta;
  law.x_m_ = std::pow(beta, 1.0 / s);
  return law;
}

RadiusLaw RadiusLaw::pareto_mixture(double s, double beta, double weight,
                                    double s2, double beta2) {
  if (!(s > 0.0) || !(beta > 0.0) || !(s2 > 0.0) || !(beta2 > 0.0)) {
    throw parameter_error("RadiusLaw::pareto_mixture: parameters must be positive");
  }
  if (!(weight > 0.0) || !(weight < 1.0)) {
    throw parameter_error("RadiusLaw::pareto_mixture: weight must lie in (0,1)");
  }
  if (!(s2 > s)) {
    throw parameter_error(
        "RadiusLaw::pareto_mixture: second component must have the lighter tail (s2 > s)");
  }
  RadiusLaw law;
  law.kind_ = RadiusLawKind::pareto_mixture;
  law.s_ = s;
  law.beta_ = beta;
  law.x_m_ = std::pow(beta, 1.0 / s);
  law.weight_ = weight;
  law.s2_ = s2;
  law.beta2_ = beta2;
  law.x_m2_ = std::pow(beta2, 1.0 / s2);
  return law;
}

double RadiusLaw::tail_constant() const {
  return kind_ == RadiusLawKind::pareto ? beta_ : weight_ * beta_;
}

double RadiusLaw::tail(double t) const {
  if (t < 0.0) return 1.0;
  if (kind_ == RadiusLawKind::pareto) return pareto_tail(t, s_, beta_, x_m_);
  return weight_ * pareto_tail(t, s_, beta_, x_m_) +
         (1.0 - weight_) * pareto_tail(t, s2_, beta2_, x_m2_);
}

double RadiusLaw::moment(double k) const {
  if (kind_ == RadiusLawKind::pareto) return pareto_moment(k, s_, x_m_);
  return weight_ * pareto_moment(k, s_, x_m_) +
         (1.0 - weight_) * pareto_moment(k, s2_, x_m2_);
}

double RadiusLaw::sample(Rng& rng) const {
  if (kind_ == RadiusLawKind::pareto) return pareto_sample(rng, s_, x_m_);
  return rng.bernoulli(weight_) ? pareto_sample(rng, s_, x_m_)
                                : pareto_sample(rng, s2_, x_m2_);
}

}  // namespace sfg
