#include "sfg/spatial_grid.hpp"

#include <cmath>

#include "sfg/errors.hpp"

namespace sfg {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 24;

int choose_cells_per_axis(int d, double n, double target_cell) {
  int m = static_cast<int>(std::floor(n / target_cell));
  if (m < 1) m = 1;
  // Keep the bucket table bounded regardless of n.
  while (m > 1 && std::pow(static_cast<double>(m), d) > static_cast<double>(kMaxCells)) {
    m /= 2;
  }
  return m;
}

}  // namespace

SpatialGrid::SpatialGrid(const SampleInstance& instance, double target_cell)
    : instance_(&instance) {
  if (!(target_cell > 0.0)) throw parameter_error("SpatialGrid: cell side must be positive");
  if (instance.d > kMaxDim) throw parameter_error("SpatialGrid: dimension too large");
  cells_per_axis_ = choose_cells_per_axis(instance.d, instance.n, target_cell);
  cell_side_ = instance.n / cells_per_axis_;

  const int d = instance.d;
  const int m = cells_per_axis_;
  std::size_t total_cells = 1;
  for (int k = 0; k < d; ++k) total_cells *= static_cast<std::size_t>(m);

  auto cell_of = [&](const double* p) {
    std::size_t flat = 0;
    for (int k = 0; k < d; ++k) {
      int cell = static_cast<int>(std::floor((p[k] + 0.5 * instance_->n) / cell_side_));
      if (cell >= m) cell = m - 1;
      if (cell < 0) cell = 0;
      flat = flat * static_cast<std::size_t>(m) + static_cast<std::size_t>(cell);
    }
    return flat;
  };

  bucket_start_.assign(total_cells + 1, 0);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    ++bucket_start_[cell_of(instance.location(i)) + 1];
  }
  for (std::size_t c = 0; c < total_cells; ++c) bucket_start_[c + 1] += bucket_start_[c];
  point_ids_.resize(instance.size());
  std::vector<std::size_t> cursor(bucket_start_.begin(), bucket_start_.end() - 1);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    point_ids_[cursor[cell_of(instance.location(i))]++] = static_cast<std::int32_t>(i);
  }
}

}  // namespace sfg
