#pragma once

#include <functional>

#include "sfg/radius_law.hpp"

namespace sfg {

// Adaptive Simpson quadrature to a relative tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol);

// Surface measure of the unit-sphere patch {theta in S^{d-1} : |theta_i| <= c
// for all i}. Closed form for d = 2, recursive quadrature above. Equals the
// full sphere measure d kappa_d for c >= 1 and 0 for c < 1/sqrt(d).
double sphere_patch_measure(int d, double c);

// Integral of f(|x|) over the cube [-half_width, half_width]^d, split into
// the exact radial part over the inscribed ball and a 1-d quadrature over
// the corner shell.
double cube_radial_integral(int d, double half_width,
                            const std::function<double(double)>& f, double rel_tol = 1e-6);

// Volume of B_r(0) intersected with the cube [-half_width, half_width]^d.
double ball_cube_volume(int d, double r, double half_width);

enum class Regime { moment, logarithmic, polynomial };

// Regime of E D_in^(alpha): sign of alpha + d - s.
Regime classify_regime(int d, double alpha, double s);
const char* to_string(Regime regime);

// Deterministic evaluation of E D_in,n^(alpha) = integral over T_n of
// |eta|^alpha P(R > |eta|) d eta: closed-form radial part over B_{n/2} plus
// quadrature over the torus corners.
double campbell_mean_oracle(int d, double n, double alpha, const RadiusLaw& law);

// Limit value d kappa_d / (alpha + d) * E R^{alpha+d} for s > alpha + d.
double campbell_mean_limit(int d, double alpha, const RadiusLaw& law);

// Limit constant of the polynomial regime, beta * integral over the unit
// cube of |eta|^{alpha-s}; requires s < alpha + d.
double polynomial_regime_target(int d, double alpha, double s, double beta);

}  // namespace sfg
