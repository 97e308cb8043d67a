#pragma once

#include <memory>
#include <random>

#include "kinetic/grid.hpp"

namespace kinetic::testing {

inline std::shared_ptr<const VelocityGrid> velocity(std::size_t shells = 4, std::size_t angles = 16,
                                                    double s_max = 2.0) {
  return std::make_shared<const VelocityGrid>(build_velocity_grid(shells, angles, s_max));
}

inline PhaseGridPtr phase_grid(int dim = 1, int n = 8, double L = 2.0, std::size_t shells = 4,
                               std::size_t angles = 16, double s_max = 2.0) {
  std::array<int, 3> cells{1, 1, 1};
  std::array<double, 3> extent{1.0, 1.0, 1.0};
  for (int d = 0; d < dim; ++d) {
    cells[d] = n;
    extent[d] = L;
  }
  return make_phase_grid(SpatialGrid(dim, extent, cells), build_velocity_grid(shells, angles, s_max));
}

/// Uniform [lo, hi) entries from a seeded generator.
inline DistributionField random_field(const PhaseGridPtr& grid, std::mt19937_64& rng, double lo = 0.0,
                                      double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(grid->size());
  for (auto& x : v) x = u(rng);
  return DistributionField(grid, std::move(v));
}

}  // namespace kinetic::testing
