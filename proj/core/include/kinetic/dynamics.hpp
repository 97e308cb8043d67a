#pragma once

#include <span>
#include <string>
#include <vector>

#include "kinetic/grid.hpp"
#include "kinetic/kernel.hpp"

namespace kinetic {

/// Density-dependent death rate mu(n). Every kind is nonnegative,
/// nondecreasing and Lipschitz on n >= 0.
struct DampingModel {
  enum class Kind { zero, constant, linear, saturating };

  Kind kind = Kind::zero;
  double c = 0.0;

  static DampingModel zero() { return {Kind::zero, 0.0}; }
  static DampingModel constant(double c);
  /// mu(n) = c n
  static DampingModel linear(double c);
  /// mu(n) = c n / (1 + n)
  static DampingModel saturating(double c);

  [[nodiscard]] double rate(double n) const;
  [[nodiscard]] double lipschitz_constant() const;
  [[nodiscard]] std::string name() const;

  /// Exact n(t) for n' = -mu(n) n, n(0) = n0 >= 0. This is the density
  /// evolution of a spatially homogeneous solution, since scattering
  /// conserves the density cell by cell.
  [[nodiscard]] double evolve_density(double n0, double t) const;
};

/// Position after moving for `dt` along xi (first `dim` components), wrapped
/// into the periodic box.
Vec3 trace_characteristic(const SpatialGrid& grid, const Vec3& x, const Vec3& xi, double dt);

/// Multilinear periodic interpolation at x - displacement for every cell
/// center. The displacement is uniform over the grid, so the operation is a
/// convex combination of circular shifts: nonnegative and exactly
/// mass-preserving up to round-off.
class PeriodicShift {
 public:
  PeriodicShift(const SpatialGrid& grid, const Vec3& displacement);

  /// dst[c] = src interpolated at center(c) - displacement. `src` and `dst`
  /// hold one value per cell and must not alias.
  void apply(std::span<const double> src, std::span<double> dst) const;
  /// Interpolated value at one cell.
  [[nodiscard]] double sample(std::span<const double> src, std::size_t cell) const;

  /// True when every active axis moves by a whole number of cells.
  [[nodiscard]] bool grid_aligned() const;

 private:
  void apply_axis(int d, std::span<const double> in, std::span<double> out) const;

  struct Axis {
    int offset = 0;     // whole-cell part, reduced mod N
    double frac = 0.0;  // weight on the cell one further upstream
  };
  const SpatialGrid* grid_;
  std::array<Axis, 3> axes_{};
};

/// Semi-Lagrangian transport of every velocity slice over `dt`.
DistributionField advect(const DistributionField& f, double dt);

/// -mu(n(x)) f(x, xi).
PhaseField damping_rate(const PhaseField& f, const DampingModel& mu);

/// Integral of mu(n) (1 + |xi|^m) f over phase space, with the density `n`
/// (one value per cell) supplied by the caller.
double damping_power(const PhaseField& f, std::span<const double> n, const DampingModel& mu, double m);

/// Time-indexed fields on uniform nodes t_j = j T / N_t.
class Trajectory {
 public:
  Trajectory(double horizon, std::size_t steps, std::vector<DistributionField> fields);

  [[nodiscard]] double horizon() const { return horizon_; }
  [[nodiscard]] std::size_t steps() const { return steps_; }
  [[nodiscard]] double dt() const { return horizon_ / static_cast<double>(steps_); }
  [[nodiscard]] double time(std::size_t j) const { return static_cast<double>(j) * dt(); }
  [[nodiscard]] std::size_t size() const { return fields_.size(); }
  [[nodiscard]] const DistributionField& operator[](std::size_t j) const { return fields_[j]; }
  [[nodiscard]] const std::vector<DistributionField>& fields() const { return fields_; }
  [[nodiscard]] const PhaseGrid& grid() const { return fields_.front().grid(); }
  [[nodiscard]] const PhaseGridPtr& grid_ptr() const { return fields_.front().grid_ptr(); }

 private:
  double horizon_;
  std::size_t steps_;
  std::vector<DistributionField> fields_;
};

/// exp(lambda tau (P - I)) for one shell's angular block, computed with a
/// nonnegative Taylor series and squaring, so every entry is >= 0.
std::vector<double> scattering_propagator(const ScatteringKernel& kernel, double tau);

/// Exact flow of the space-local part f_t = -mu(n) f + Q2(f) over `tau`.
/// `propagator` comes from scattering_propagator(kernel, tau).
DistributionField local_flow(const DistributionField& f, const DampingModel& mu, double tau,
                             std::span<const double> propagator);

/// Strang splitting reference integrator: half local step, full transport,
/// half local step. Throws DomainError if lambda dt > 1 or mu(n_max) dt > 1.
Trajectory run_splitting(const DistributionField& f0, const ScatteringKernel& kernel, const DampingModel& mu,
                         double horizon, std::size_t steps);

}  // namespace kinetic
