#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sfg {

// Volume kappa_d of the d-dimensional unit ball.
double unit_ball_volume(int d);

// Wraps a coordinate into the canonical range [-n/2, n/2).
double canonical_coordinate(double x, double n);

// Minimal-image Euclidean distance between two coordinate vectors on the
// torus of side n. Coordinates are assumed canonical.
double toroidal_distance(int d, double n, const double* a, const double* b);

// A point on the torus T_n = [-n/2, n/2)^d with opposite faces identified.
// Coordinates are canonicalized at construction; d >= 2 and n > 0 enforced.
class TorusPoint {
 public:
  TorusPoint(std::vector<double> coords, double n);

  int dim() const { return static_cast<int>(coords_.size()); }
  double side() const { return n_; }
  std::span<const double> coords() const { return coords_; }
  const double* data() const { return coords_.data(); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<double> coords_;
  double n_;
};

double toroidal_distance(const TorusPoint& a, const TorusPoint& b);

// Largest attainable toroidal distance, sqrt(d) * n / 2.
double max_toroidal_distance(int d, double n);

bool ball_contains(const TorusPoint& center, double radius, const TorusPoint& query);

// Axis-aligned box, lower corner plus common side length.
struct Box {
  std::vector<double> lower;
  double side = 0.0;

  // Half-open membership: lower <= x < lower + side per coordinate.
  bool contains(const double* p) const;
};

// Address of a level-m dyadic subcube of [-n/2, n/2]^d. digits[j] packs the
// d binary choices of refinement step j+1 into the low d bits.
struct DyadicCubeIndex {
  int d = 2;
  std::vector<std::uint32_t> digits;

  int level() const { return static_cast<int>(digits.size()); }
};

// The cube Q_I: lower corner (-n/2,...,-n/2) + n * sum_j 2^{-j} i_j, side n 2^{-m}.
Box dyadic_cube(const DyadicCubeIndex& index, double n);

// The 2^d children of an index, ordered by packed digit value.
std::vector<DyadicCubeIndex> dyadic_children(const DyadicCubeIndex& index);

// Level-m cube containing a canonical point, using half-open boxes so every
// point lies in exactly one cube per level.
DyadicCubeIndex dyadic_cube_of_point(const double* p, int d, double n, int level);

// Intersection test of two boxes embedded in the torus (per-coordinate
// overlap of wrapped intervals, boundaries counted as touching).
bool toroidal_boxes_intersect(const Box& a, const Box& b, double n);

}  // namespace sfg
