#pragma once

#include "sfg/radius_law.hpp"
#include "sfg/rng.hpp"
#include "sfg/sampling.hpp"

namespace sfg {

// Direct samplers of typical-vertex functionals on the finite torus. The
// points of X^(n) inside B_r(o) form a Poisson process with mean
// lambda * vol(B_r intersect T_n), locations uniform on that set and marks
// iid, so the added-origin quantities can be drawn without materializing the
// rest of the instance. Distributionally identical to building the full
// instance; the full-instance routes below exist as the cross-check.

// D_out,n^(0) at an added origin: draws R*, returns Poisson(lambda * vol).
double torus_out_degree_sample(int d, double n, double lambda, const RadiusLaw& law,
                               Rng& rng);

// D_out,n^(alpha) at an added origin; samples neighbor locations for
// alpha > 0.
double torus_out_sum_sample(double alpha, int d, double n, double lambda,
                            const RadiusLaw& law, Rng& rng);

struct ThinnedOriginSample {
  double full_out_sum = 0.0;     // over all in-ball points
  double thinned_out_sum = 0.0;  // over surviving thinned targets
};

// Joint draw of the full and thinned out-sums at an added origin (o, R*).
// Thinning only ever consults points inside B_{R*}(o), so the in-ball draw
// is exact.
ThinnedOriginSample thinned_origin_sample(double alpha, int d, double n, double lambda,
                                          const RadiusLaw& law, Rng& rng);

// Uniform location in B_r(o) intersect T_n, written to out[0..d).
void sample_in_ball_torus(int d, double n, double r, Rng& rng, double* out);

// --- full-instance routes (cross-checks and the regimes experiment) ---

// Sum over instance points (xi, r_i) with d(xi, loc) <= r_i of d(xi, loc)^alpha:
// the in-sum at an added vertex at loc.
double in_sum_at_location(const SampleInstance& instance, const double* location,
                          double alpha);

// In-sum at an existing vertex, skipping the vertex itself.
double in_sum_at_vertex(const SampleInstance& instance, std::size_t vertex, double alpha);

// Sum over instance points within `radius` of loc of d^alpha: the out-sum of
// an added vertex (loc, radius).
double out_sum_at_location(const SampleInstance& instance, const double* location,
                           double radius, double alpha);

// Thinned out-sum of an added origin (o, r_star) against a materialized
// instance.
double thinned_out_sum_at_origin(const SampleInstance& instance, double r_star,
                                 double alpha);

}  // namespace sfg
