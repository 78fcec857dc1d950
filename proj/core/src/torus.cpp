#include "sfg/torus.hpp"

#include <cmath>

#include "sfg/errors.hpp"

namespace sfg {

double unit_ball_volume(int d) {
  if (d < 1) throw parameter_error("unit_ball_volume: d must be >= 1");
  const double half = 0.5 * static_cast<double>(d);
  return std::pow(M_PI, half) / std::tgamma(half + 1.0);
}

double canonical_coordinate(double x, double n) {
  double y = std::fmod(x + 0.5 * n, n);
  if (y < 0.0) y += n;
  // fmod can land exactly on n after the correction when x + n/2 is a tiny
  // negative; fold it back.
  if (y >= n) y -= n;
  return y - 0.5 * n;
}

double toroidal_distance(int d, double n, const double* a, const double* b) {
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    double delta = std::fabs(a[i] - b[i]);
    if (delta > 0.5 * n) delta = n - delta;
    sum += delta * delta;
  }
  return std::sqrt(sum);
}

TorusPoint::TorusPoint(std::vector<double> coords, double n)
    : coords_(std::move(coords)), n_(n) {
  if (coords_.size() < 2) throw parameter_error("TorusPoint: dimension must be >= 2");
  if (!(n_ > 0.0)) throw parameter_error("TorusPoint: side length must be positive");
  for (double& c : coords_) c = canonical_coordinate(c, n_);
}

double toroidal_distance(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim() || a.side() != b.side()) {
    throw parameter_error("toroidal_distance: points live on different tori");
  }
  return toroidal_distance(a.dim(), a.side(), a.data(), b.data());
}

double max_toroidal_distance(int d, double n) {
  return 0.5 * n * std::sqrt(static_cast<double>(d));
}

bool ball_contains(const TorusPoint& center, double radius, const TorusPoint& query) {
  if (radius < 0.0) throw parameter_error("ball_contains: negative radius");
  return toroidal_distance(center, query) <= radius;
}

bool Box::contains(const double* p) const {
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (p[i] < lower[i] || p[i] >= lower[i] + side) return false;
  }
  return true;
}

Box dyadic_cube(const DyadicCubeIndex& index, double n) {
  if (index.d < 1) throw parameter_error("dyadic_cube: malformed index");
  Box box;
  box.lower.assign(static_cast<std::size_t>(index.d), -0.5 * n);
  double scale = n;
  for (int j = 0; j < index.level(); ++j) {
    scale *= 0.5;
    const std::uint32_t digit = index.digits[static_cast<std::size_t>(j)];
    if (digit >> index.d) throw parameter_error("dyadic_cube: digit out of range");
    for (int i = 0; i < index.d; ++i) {
      if ((digit >> i) & 1u) box.lower[static_cast<std::size_t>(i)] += scale;
    }
  }
  box.side = scale;
  return box;
}

std::vector<DyadicCubeIndex> dyadic_children(const DyadicCubeIndex& index) {
  std::vector<DyadicCubeIndex> children;
  const std::uint32_t count = 1u << index.d;
  children.reserve(count);
  for (std::uint32_t digit = 0; digit < count; ++digit) {
    DyadicCubeIndex child = index;
    child.digits.push_back(digit);
    children.push_back(std::move(child));
  }
  return children;
}

DyadicCubeIndex dyadic_cube_of_point(const double* p, int d, double n, int level) {
  if (level < 0) throw parameter_error("dyadic_cube_of_point: negative level");
  DyadicCubeIndex index;
  index.d = d;
  index.digits.reserve(static_cast<std::size_t>(level));
  std::vector<double> rel(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    double t = (p[i] + 0.5 * n) / n;  // in [0, 1)
    if (t < 0.0) t = 0.0;
    if (t >= 1.0) t = std::nextafter(1.0, 0.0);
    rel[static_cast<std::size_t>(i)] = t;
  }
  for (int j = 0; j < level; ++j) {
    std::uint32_t digit = 0;
    for (int i = 0; i < d; ++i) {
      double& t = rel[static_cast<std::size_t>(i)];
      t *= 2.0;
      if (t >= 1.0) {
        digit |= 1u << i;
        t -= 1.0;
      }
    }
    index.digits.push_back(digit);
  }
  return index;
}

namespace {

// Overlap of two wrapped intervals [a, a+la] and [b, b+lb] on a circle of
// circumference n, closed endpoints.
bool wrapped_intervals_overlap(double a, double la, double b, double lb, double n) {
  if (la + lb >= n) return true;
  // Shift so that interval A starts at 0; then B overlaps iff its start lies
  // in [-lb, la] modulo n.
  double start = std::fmod(b - a, n);
  if (start < 0.0) start += n;
  return start <= la || start >= n - lb;
}

}  // namespace

bool toroidal_boxes_intersect(const Box& a, const Box& b, double n) {
  if (a.lower.size() != b.lower.size()) {
    throw parameter_error("toroidal_boxes_intersect: dimension mismatch");
  }
  for (std::size_t i = 0; i < a.lower.size(); ++i) {
    if (!wrapped_intervals_overlap(a.lower[i], a.side, b.lower[i], b.side, n)) {
      return false;
    }
  }
  return true;
}

}  // namespace sfg
