#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "sfg/sampling.hpp"

namespace sfg {

// Uniform bucket grid over the torus for fixed-radius neighbor gathering.
// Cells per axis are chosen so the cell side is close to target_cell but the
// grid tiles the torus exactly; buckets are CSR (counting sort), queries
// enumerate the cells intersecting a ball's bounding box with wraparound.
class SpatialGrid {
 public:
  explicit SpatialGrid(const SampleInstance& instance, double target_cell = 1.0);

  int cells_per_axis() const { return cells_per_axis_; }
  double cell_side() const { return cell_side_; }

  // Calls visit(id) for every point whose cell intersects the bounding box
  // of the ball; callers filter by exact toroidal distance. Each point is
  // reported at most once.
  template <typename Visitor>
  void for_each_candidate(const double* center, double radius, Visitor&& visit) const {
    const int m = cells_per_axis_;
    const int d = instance_->d;
    std::int32_t lo[kMaxDim];
    std::int32_t count[kMaxDim];
    for (int k = 0; k < d; ++k) {
      const double c = center[k] + 0.5 * instance_->n;
      std::int32_t cell_lo = static_cast<std::int32_t>(std::floor((c - radius) / cell_side_));
      std::int32_t cell_hi = static_cast<std::int32_t>(std::floor((c + radius) / cell_side_));
      std::int32_t span = cell_hi - cell_lo + 1;
      if (span >= m) {
        cell_lo = 0;
        span = m;
      }
      lo[k] = cell_lo;
      count[k] = span;
    }
    std::int32_t idx[kMaxDim] = {0};
    for (;;) {
      std::size_t flat = 0;
      for (int k = 0; k < d; ++k) {
        std::int32_t cell = (lo[k] + idx[k]) % m;
        if (cell < 0) cell += m;
        flat = flat * static_cast<std::size_t>(m) + static_cast<std::size_t>(cell);
      }
      for (std::size_t slot = bucket_start_[flat]; slot < bucket_start_[flat + 1]; ++slot) {
        visit(point_ids_[slot]);
      }
      int k = d - 1;
      while (k >= 0) {
        if (++idx[k] < count[k]) break;
        idx[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }

  static constexpr int kMaxDim = 8;

 private:
  const SampleInstance* instance_;
  int cells_per_axis_;
  double cell_side_;
  std::vector<std::size_t> bucket_start_;
  std::vector<std::int32_t> point_ids_;
};

}  // namespace sfg
