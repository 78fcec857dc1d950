#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sfg/radius_law.hpp"
#include "sfg/rng.hpp"
#include "sfg/torus.hpp"

namespace sfg {

struct MarkedPoint {
  std::int32_t id;
  TorusPoint location;
  double radius;
};

// One realization of the marked Poisson process on the torus. Locations and
// radii live in flat arrays; ids are the array positions.
struct SampleInstance {
  int d = 2;
  double n = 1.0;
  double lambda = 1.0;
  RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  std::uint64_t seed = 0;
  std::vector<double> coords;  // size() * d, canonical coordinates
  std::vector<double> radii;

  std::size_t size() const { return radii.size(); }
  const double* location(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(d); }
  double radius(std::size_t i) const { return radii[i]; }
  MarkedPoint marked_point(std::size_t i) const;

  double distance(std::size_t i, std::size_t j) const {
    return toroidal_distance(d, n, location(i), location(j));
  }

  // Total order on marks used everywhere ties matter: larger radius first,
  // ties broken by lower id = larger.
  bool mark_less(std::size_t a, std::size_t b) const {
    return radii[a] < radii[b] || (radii[a] == radii[b] && a > b);
  }
};

inline constexpr std::size_t kDefaultMaxPoints = 50'000'000;

// Inverse-CDF draw from the radius law.
double sample_radius(const RadiusLaw& law, Rng& rng);

// Poisson(lambda n^d) points, uniform locations, iid radii. Bit-reproducible
// for a fixed (seed, toolkit version).
SampleInstance sample_instance(int d, double n, double lambda, const RadiusLaw& law,
                               std::uint64_t seed, std::size_t max_points = kDefaultMaxPoints);

// Exact draw of the infinite-volume out-sum D_out^(alpha) at a typical
// vertex: R* from the law, N ~ Poisson(kappa_d R*^d) neighbors, each at a
// distance R* |U|, |U| the norm of a uniform point of the unit ball.
double sample_typical_out_sum(double alpha, int d, const RadiusLaw& law, Rng& rng);

// Same with the typical mark pinned to r.
double out_sum_given_radius(double alpha, int d, double r, Rng& rng);

// Exact draw of the infinite-volume in-sum D_in^(alpha) at a typical vertex:
// N ~ Poisson(kappa_d E R^d) contributing points, distances drawn from the
// density proportional to u^{d-1} P(R > u). Requires s > d.
double sample_typical_in_sum(double alpha, int d, const RadiusLaw& law, Rng& rng);

// One distance draw from the density proportional to u^{d-1} P(R > u).
double sample_in_distance(int d, const RadiusLaw& law, Rng& rng);

// Mean contributing-point count kappa_d E R^d of the in-sum sampler.
double in_sum_poisson_mean(int d, const RadiusLaw& law);

// Header line "# d=<d> n=<n> lambda=<lambda> s=<s> beta=<beta> seed=<seed>".
std::string point_set_header(const SampleInstance& instance);

// Point-set file: the header line, then one "id x_1 ... x_d r" line per
// point at full double precision.
void write_point_set(std::ostream& out, const SampleInstance& instance);
void write_point_set_file(const std::string& path, const SampleInstance& instance);
SampleInstance read_point_set(std::istream& in);
SampleInstance read_point_set_file(const std::string& path);

}  // namespace sfg
