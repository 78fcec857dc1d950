#include "sfg/rng.hpp"

#include <cmath>

#include "sfg/errors.hpp"

namespace sfg {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_open_closed() { return 1.0 - next_double(); }

double Rng::uniform(double a, double b) { return a + (b - a) * next_double(); }

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound == 0) throw parameter_error("next_below: bound must be positive");
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

bool Rng::bernoulli(double p) { return next_double() < p; }

double Rng::normal() {
  const double u1 = next_open_closed();
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

namespace {

long long poisson_inversion(Rng& rng, double mean) {
  const double u = rng.next_double();
  double p = std::exp(-mean);
  double cdf = p;
  long long k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (k > 2000) break;  // unreachable for mean < 10; numeric failsafe
  }
  return k;
}

// W. Hormann's PTRD sampler; exact and O(1) for mean >= 10.
long long poisson_ptrd(Rng& rng, double mean) {
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mean);
  for (;;) {
    double u = rng.next_double() - 0.5;
    double v = rng.next_double();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mu - mean - std::lgamma(k + 1.0)) {
      return static_cast<long long>(k);
    }
  }
}

}  // namespace

long long Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw parameter_error("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_inversion(*this, mean);
  return poisson_ptrd(*this, mean);
}

}  // namespace sfg
