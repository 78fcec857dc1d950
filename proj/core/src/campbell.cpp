#include "sfg/campbell.hpp"

#include <cmath>

#include "sfg/errors.hpp"
#include "sfg/torus.hpp"

namespace sfg {

namespace {

double simpson_slice(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b,
             double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_slice(fa, flm, fm, a, m);
  const double right = simpson_slice(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson_slice(fa, fm, fb, a, b);
  const double scale = std::max(std::fabs(whole), 1e-300);
  return adapt(f, a, fa, b, fb, m, fm, whole, scale * rel_tol, 48);
}

double sphere_patch_measure(int d, double c) {
  if (d < 1) throw parameter_error("sphere_patch_measure: d must be >= 1");
  const double full = d * unit_ball_volume(d);
  if (c >= 1.0) return full;
  if (c * c * d < 1.0) return 0.0;
  if (d == 1) return 0.0;  // c < 1 already handled above
  if (d == 2) return 2.0 * M_PI - 8.0 * std::acos(c);
  // Slice off the last coordinate z; the remaining direction must fit the
  // (d-1)-cube scaled by 1/sqrt(1-z^2).
  const double z_max = std::min(c, 1.0);
  const auto integrand = [&](double z) {
    const double w = 1.0 - z * z;
    if (w <= 0.0) return 0.0;
    const double patch = sphere_patch_measure(d - 1, c / std::sqrt(w));
    if (patch == 0.0) return 0.0;
    return patch * std::pow(w, 0.5 * (d - 3));
  };
  const double half = integrate_adaptive(integrand, 0.0, z_max, 1e-8);
  return 2.0 * half;
}

namespace {

// integral of u^e du over [a, b]
double power_integral(double a, double b, double e) {
  if (e == -1.0) return std::log(b / a);
  return (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
}

// integral of u^{p-1} P(R > u) du over [0, upper] for one Pareto component,
// exact: the tail is 1 below x_m and beta u^{-s} above.
double pareto_radial_piece(double upper, double p, double s, double beta, double x_m) {
  const double split = std::min(upper, x_m);
  double value = std::pow(split, p) / p;
  if (upper > x_m) value += beta * power_integral(x_m, upper, p - 1.0 - s);
  return value;
}

// integral of u^{p-1} P(R > u) du over [0, upper] for the law.
double radial_tail_integral(const RadiusLaw& law, double upper, double p) {
  if (law.kind() == RadiusLawKind::pareto) {
    return pareto_radial_piece(upper, p, law.s(), law.beta(), law.x_m());
  }
  const double x_m2 = std::pow(law.beta2(), 1.0 / law.s2());
  return law.mixture_weight() *
             pareto_radial_piece(upper, p, law.s(), law.beta(), law.x_m()) +
         (1.0 - law.mixture_weight()) *
             pareto_radial_piece(upper, p, law.s2(), law.beta2(), x_m2);
}

}  // namespace

double cube_radial_integral(int d, double half_width,
                            const std::function<double(double)>& f, double rel_tol) {
  const double surface = d * unit_ball_volume(d);
  const double radial = integrate_adaptive(
      [&](double u) { return u == 0.0 ? 0.0 : f(u) * std::pow(u, d - 1); }, 0.0,
      half_width, rel_tol);
  const double corner = integrate_adaptive(
      [&](double u) {
        return f(u) * std::pow(u, d - 1) * sphere_patch_measure(d, half_width / u);
      },
      half_width, half_width * std::sqrt(static_cast<double>(d)), rel_tol);
  return surface * radial + corner;
}

double ball_cube_volume(int d, double r, double half_width) {
  if (r < 0.0) throw parameter_error("ball_cube_volume: negative radius");
  const double L = half_width;
  if (r <= L) return unit_ball_volume(d) * std::pow(r, d);
  if (r * r >= L * L * d) return std::pow(2.0 * L, d);
  if (d == 2) {
    // Disk minus the four circular segments poking out of the square.
    const double seg = r * r * std::acos(L / r) - L * std::sqrt(r * r - L * L);
    return M_PI * r * r - 4.0 * seg;
  }
  const double inner = unit_ball_volume(d) * std::pow(L, d);
  const double shell = integrate_adaptive(
      [&](double u) { return std::pow(u, d - 1) * sphere_patch_measure(d, L / u); }, L, r,
      1e-8);
  return inner + shell;
}

Regime classify_regime(int d, double alpha, double s) {
  const double gap = alpha + static_cast<double>(d) - s;
  if (std::fabs(gap) < 1e-12) return Regime::logarithmic;
  return gap < 0.0 ? Regime::moment : Regime::polynomial;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::moment: return "moment";
    case Regime::logarithmic: return "log";
    case Regime::polynomial: return "polynomial";
  }
  return "?";
}

double campbell_mean_oracle(int d, double n, double alpha, const RadiusLaw& law) {
  if (d < 2) throw parameter_error("campbell_mean_oracle: d must be >= 2");
  if (!(n > 0.0)) throw parameter_error("campbell_mean_oracle: n must be positive");
  if (alpha < 0.0) throw parameter_error("campbell_mean_oracle: alpha must be >= 0");
  const double L = 0.5 * n;
  const double surface = d * unit_ball_volume(d);
  const double radial = surface * radial_tail_integral(law, L, alpha + d);
  const double corner = integrate_adaptive(
      [&](double u) {
        return std::pow(u, alpha + d - 1) * law.tail(u) * sphere_patch_measure(d, L / u);
      },
      L, L * std::sqrt(static_cast<double>(d)), 1e-4);
  return radial + corner;
}

double campbell_mean_limit(int d, double alpha, const RadiusLaw& law) {
  const double p = alpha + static_cast<double>(d);
  return d * unit_ball_volume(d) / p * law.moment(p);
}

double polynomial_regime_target(int d, double alpha, double s, double beta) {
  const double e = alpha - s;
  if (!(e + d > 0.0)) {
    throw parameter_error("polynomial_regime_target: requires s < alpha + d");
  }
  const double L = 0.5;
  const double surface = d * unit_ball_volume(d);
  const double radial = surface * std::pow(L, e + d) / (e + d);
  const double corner = integrate_adaptive(
      [&](double u) { return std::pow(u, e + d - 1) * sphere_patch_measure(d, L / u); }, L,
      L * std::sqrt(static_cast<double>(d)), 1e-6);
  return beta * (radial + corner);
}

}  // namespace sfg
