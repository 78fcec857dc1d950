#include "sfg/typical_samplers.hpp"

#include <cmath>
#include <vector>

#include "sfg/campbell.hpp"
#include "sfg/errors.hpp"
#include "sfg/graph.hpp"
#include "sfg/torus.hpp"

namespace sfg {

void sample_in_ball_torus(int d, double n, double r, Rng& rng, double* out) {
  const double max_dist = max_toroidal_distance(d, n);
  if (r >= max_dist) {
    for (int k = 0; k < d; ++k) out[k] = rng.uniform(-0.5 * n, 0.5 * n);
    return;
  }
  if (r <= 0.5 * n) {
    // Euclidean ball, no wrap: radius u with CDF (u/r)^d times a uniform
    // direction.
    const double u = r * std::pow(rng.next_double(), 1.0 / d);
    if (d == 2) {
      const double theta = rng.uniform(0.0, 2.0 * M_PI);
      out[0] = u * std::cos(theta);
      out[1] = u * std::sin(theta);
    } else {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (int k = 0; k < d; ++k) {
          out[k] = rng.normal();
          norm2 += out[k] * out[k];
        }
      } while (norm2 == 0.0);
      const double scale = u / std::sqrt(norm2);
      for (int k = 0; k < d; ++k) out[k] *= scale;
    }
    for (int k = 0; k < d; ++k) out[k] = canonical_coordinate(out[k], n);
    return;
  }
  // Ball wraps around the torus; rejection from the cube keeps the law
  // exact (acceptance >= kappa_d / 2^d).
  std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
  for (;;) {
    for (int k = 0; k < d; ++k) out[k] = rng.uniform(-0.5 * n, 0.5 * n);
    if (toroidal_distance(d, n, out, origin.data()) <= r) return;
  }
}

double torus_out_degree_sample(int d, double n, double lambda, const RadiusLaw& law,
                               Rng& rng) {
  const double r = law.sample(rng);
  const double volume = ball_cube_volume(d, std::min(r, max_toroidal_distance(d, n)),
                                         0.5 * n);
  return static_cast<double>(rng.poisson(lambda * volume));
}

double torus_out_sum_sample(double alpha, int d, double n, double lambda,
                            const RadiusLaw& law, Rng& rng) {
  if (alpha == 0.0) return torus_out_degree_sample(d, n, lambda, law, rng);
  const double r = law.sample(rng);
  const double reach = std::min(r, max_toroidal_distance(d, n));
  const double volume = ball_cube_volume(d, reach, 0.5 * n);
  const long long count = rng.poisson(lambda * volume);
  std::vector<double> point(static_cast<std::size_t>(d));
  std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
  double sum = 0.0;
  for (long long i = 0; i < count; ++i) {
    sample_in_ball_torus(d, n, reach, rng, point.data());
    sum += std::pow(toroidal_distance(d, n, point.data(), origin.data()), alpha);
  }
  return sum;
}

ThinnedOriginSample thinned_origin_sample(double alpha, int d, double n, double lambda,
                                          const RadiusLaw& law, Rng& rng) {
  const double r_star = law.sample(rng);
  const double reach = std::min(r_star, max_toroidal_distance(d, n));
  const double volume = ball_cube_volume(d, reach, 0.5 * n);
  const long long count = rng.poisson(lambda * volume);

  std::vector<double> coords(static_cast<std::size_t>(count) * static_cast<std::size_t>(d));
  std::vector<double> radii(static_cast<std::size_t>(count));
  std::vector<double> origin(static_cast<std::size_t>(d), 0.0);
  for (long long i = 0; i < count; ++i) {
    sample_in_ball_torus(d, n, reach, rng, coords.data() + static_cast<std::size_t>(i) * d);
    radii[static_cast<std::size_t>(i)] = law.sample(rng);
  }

  ThinnedOriginSample sample;
  std::vector<ThinCandidate> candidates;
  candidates.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    const double* loc = coords.data() + static_cast<std::size_t>(i) * d;
    sample.full_out_sum +=
        alpha == 0.0 ? 1.0 : std::pow(toroidal_distance(d, n, loc, origin.data()), alpha);
    candidates.push_back(ThinCandidate{loc, radii[static_cast<std::size_t>(i)],
                                       static_cast<std::int32_t>(i)});
  }
  const auto survivors = thinned_targets(d, n, r_star, -1, std::move(candidates));
  for (std::int32_t id : survivors) {
    const double* loc = coords.data() + static_cast<std::size_t>(id) * d;
    sample.thinned_out_sum +=
        alpha == 0.0 ? 1.0 : std::pow(toroidal_distance(d, n, loc, origin.data()), alpha);
  }
  return sample;
}

double in_sum_at_location(const SampleInstance& instance, const double* location,
                          double alpha) {
  double sum = 0.0;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const double dist =
        toroidal_distance(instance.d, instance.n, location, instance.location(i));
    if (dist <= instance.radius(i)) {
      sum += alpha == 0.0 ? 1.0 : std::pow(dist, alpha);
    }
  }
  return sum;
}

double in_sum_at_vertex(const SampleInstance& instance, std::size_t vertex, double alpha) {
  if (vertex >= instance.size()) throw parameter_error("in_sum_at_vertex: bad vertex");
  double sum = 0.0;
  const double* location = instance.location(vertex);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (i == vertex) continue;
    const double dist =
        toroidal_distance(instance.d, instance.n, location, instance.location(i));
    if (dist <= instance.radius(i)) {
      sum += alpha == 0.0 ? 1.0 : std::pow(dist, alpha);
    }
  }
  return sum;
}

double out_sum_at_location(const SampleInstance& instance, const double* location,
                           double radius, double alpha) {
  double sum = 0.0;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const double dist =
        toroidal_distance(instance.d, instance.n, location, instance.location(i));
    if (dist <= radius) {
      sum += alpha == 0.0 ? 1.0 : std::pow(dist, alpha);
    }
  }
  return sum;
}

double thinned_out_sum_at_origin(const SampleInstance& instance, double r_star,
                                 double alpha) {
  std::vector<double> origin(static_cast<std::size_t>(instance.d), 0.0);
  std::vector<ThinCandidate> candidates;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const double dist = toroidal_distance(instance.d, instance.n, origin.data(),
                                          instance.location(i));
    if (dist <= r_star) {
      candidates.push_back(
          ThinCandidate{instance.location(i), instance.radius(i), static_cast<std::int32_t>(i)});
    }
  }
  const auto survivors =
      thinned_targets(instance.d, instance.n, r_star, -1, std::move(candidates));
  double sum = 0.0;
  for (std::int32_t id : survivors) {
    const double dist = toroidal_distance(instance.d, instance.n, origin.data(),
                                          instance.location(static_cast<std::size_t>(id)));
    sum += alpha == 0.0 ? 1.0 : std::pow(dist, alpha);
  }
  return sum;
}

}  // namespace sfg
