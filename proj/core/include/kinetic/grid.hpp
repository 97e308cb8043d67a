#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace kinetic {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Periodic box of `dim` axes, uniform cells. Axes beyond `dim` are inert
/// (one cell, unit extent) so index arithmetic stays three-dimensional.
class SpatialGrid {
 public:
  SpatialGrid(int dim, std::array<double, 3> extent, std::array<int, 3> cells);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double extent(int axis) const { return extent_[axis]; }
  [[nodiscard]] int cells(int axis) const { return cells_[axis]; }
  [[nodiscard]] double width(int axis) const { return extent_[axis] / cells_[axis]; }
  [[nodiscard]] std::size_t cell_count() const { return cell_count_; }
  /// Product of the active cell widths.
  [[nodiscard]] double cell_volume() const { return cell_volume_; }
  /// Product of the active extents.
  [[nodiscard]] double volume() const { return cell_volume_ * static_cast<double>(cell_count_); }

  /// Cell linear index: axis 0 varies fastest.
  [[nodiscard]] std::size_t index(const std::array<int, 3>& ijk) const {
    return static_cast<std::size_t>(ijk[0]) +
           static_cast<std::size_t>(cells_[0]) *
               (static_cast<std::size_t>(ijk[1]) + static_cast<std::size_t>(cells_[1]) * ijk[2]);
  }
  [[nodiscard]] std::array<int, 3> coords(std::size_t cell) const;
  /// Cell-center position; inert axes report 0.
  [[nodiscard]] Vec3 center(std::size_t cell) const;
  /// Wraps a coordinate into [0, L) along an active axis.
  [[nodiscard]] double wrap(int axis, double x) const;

  bool operator==(const SpatialGrid&) const = default;

 private:
  int dim_;
  std::array<double, 3> extent_;
  std::array<int, 3> cells_;
  std::size_t cell_count_;
  double cell_volume_;
};

/// Speed shells times a symmetric set of directions on the unit sphere.
///
/// Shells are midpoints of S equal subintervals of (0, s_max] with midpoint
/// weights for the integral of s^2 ds. Directions form a product rule:
/// Gauss-Legendre nodes in cos(theta) times uniformly spaced azimuths. Every
/// direction has its antipode in the set with identical weight.
class VelocityGrid {
 public:
  VelocityGrid(std::vector<double> speeds, std::vector<double> radial_weights,
               std::vector<Vec3> directions, std::vector<double> angular_weights,
               std::vector<std::size_t> antipodes, double s_max, std::size_t polar_count);

  [[nodiscard]] std::size_t shell_count() const { return speeds_.size(); }
  [[nodiscard]] std::size_t angle_count() const { return directions_.size(); }
  [[nodiscard]] std::size_t polar_count() const { return polar_count_; }
  [[nodiscard]] std::size_t azimuth_count() const { return directions_.size() / polar_count_; }
  [[nodiscard]] double s_max() const { return s_max_; }

  [[nodiscard]] std::span<const double> speeds() const { return speeds_; }
  [[nodiscard]] std::span<const double> radial_weights() const { return radial_weights_; }
  [[nodiscard]] std::span<const double> angular_weights() const { return angular_weights_; }
  [[nodiscard]] const Vec3& direction(std::size_t a) const { return directions_[a]; }
  [[nodiscard]] std::size_t antipode(std::size_t a) const { return antipodes_[a]; }
  [[nodiscard]] Vec3 velocity(std::size_t shell, std::size_t angle) const;

  /// Quadrature of the constant 1 over the truncated ball.
  [[nodiscard]] double ball_volume() const;

  /// Same grid with every direction mapped through `rotation` (row-major).
  [[nodiscard]] VelocityGrid rotated(const Mat3& rotation) const;

  bool operator==(const VelocityGrid&) const = default;

 private:
  std::vector<double> speeds_;
  std::vector<double> radial_weights_;
  std::vector<Vec3> directions_;
  std::vector<double> angular_weights_;
  std::vector<std::size_t> antipodes_;
  double s_max_;
  std::size_t polar_count_;
};

/// Builds the velocity grid. `polar_nodes == 0` picks the default split:
/// two polar Gauss nodes (A/2 azimuths), or the equatorial pair when A == 2.
/// With two polar nodes every direction is mapped to every other by a
/// symmetry of the node set, so rotation-invariant kernels normalize to the
/// same column sum everywhere.
VelocityGrid build_velocity_grid(std::size_t shells, std::size_t angles, double s_max,
                                 std::size_t polar_nodes = 0);

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(std::size_t n);

class PhaseGrid {
 public:
  PhaseGrid(SpatialGrid spatial, VelocityGrid velocity)
      : spatial_(std::move(spatial)), velocity_(std::move(velocity)) {}

  [[nodiscard]] const SpatialGrid& spatial() const { return spatial_; }
  [[nodiscard]] const VelocityGrid& velocity() const { return velocity_; }

  [[nodiscard]] std::size_t velocity_nodes() const {
    return velocity_.shell_count() * velocity_.angle_count();
  }
  [[nodiscard]] std::size_t size() const { return spatial_.cell_count() * velocity_nodes(); }
  /// Storage order: cell-major, then shell, then angle.
  [[nodiscard]] std::size_t index(std::size_t cell, std::size_t shell, std::size_t angle) const {
    return (cell * velocity_.shell_count() + shell) * velocity_.angle_count() + angle;
  }
  /// Phase-cell measure (cell volume) * rho_i * w_a.
  [[nodiscard]] double node_measure(std::size_t shell, std::size_t angle) const {
    return spatial_.cell_volume() * velocity_.radial_weights()[shell] *
           velocity_.angular_weights()[angle];
  }

  bool operator==(const PhaseGrid&) const = default;

 private:
  SpatialGrid spatial_;
  VelocityGrid velocity_;
};

using PhaseGridPtr = std::shared_ptr<const PhaseGrid>;

inline PhaseGridPtr make_phase_grid(SpatialGrid spatial, VelocityGrid velocity) {
  return std::make_shared<const PhaseGrid>(std::move(spatial), std::move(velocity));
}

/// Real-valued function on the phase grid. Used for rates, which may be
/// negative; densities use DistributionField.
class PhaseField {
 public:
  explicit PhaseField(PhaseGridPtr grid, double time = 0.0);
  PhaseField(PhaseGridPtr grid, std::vector<double> values, double time = 0.0);

  [[nodiscard]] const PhaseGrid& grid() const { return *grid_; }
  [[nodiscard]] const PhaseGridPtr& grid_ptr() const { return grid_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<double> values() { return values_; }
  [[nodiscard]] double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  double& operator()(std::size_t cell, std::size_t shell, std::size_t angle) {
    return values_[grid_->index(cell, shell, angle)];
  }
  double operator()(std::size_t cell, std::size_t shell, std::size_t angle) const {
    return values_[grid_->index(cell, shell, angle)];
  }
  /// All velocity nodes of one cell, shell-major.
  [[nodiscard]] std::span<const double> cell_block(std::size_t cell) const {
    const std::size_t n = grid_->velocity_nodes();
    return std::span<const double>(values_).subspan(cell * n, n);
  }

  [[nodiscard]] double sup_norm() const;

 protected:
  PhaseGridPtr grid_;
  std::vector<double> values_;
  double time_;
};

/// Phase-space density: every entry finite and nonnegative.
class DistributionField : public PhaseField {
 public:
  explicit DistributionField(PhaseGridPtr grid, double time = 0.0);
  DistributionField(PhaseGridPtr grid, std::vector<double> values, double time = 0.0);

  /// Samples f(x, xi) at every cell center and velocity node.
  static DistributionField sample(PhaseGridPtr grid,
                                  const std::function<double(const Vec3&, const Vec3&)>& f,
                                  double time = 0.0);

  /// Throws InvalidValue naming the first negative or non-finite node.
  void validate() const;
};

bool same_grid(const PhaseGrid& a, const PhaseGrid& b);
void require_same_grid(const PhaseGrid& a, const PhaseGrid& b, const char* what);

using PhaseWeight = std::function<double(const Vec3& x, const Vec3& xi)>;

/// Sum over all nodes of weight * f * dmu, in storage order with compensated
/// accumulation. Throws InvalidValue naming the node if the weight is not finite.
double phase_integral(const PhaseField& f, const PhaseWeight& weight);

/// Same sum for a weight depending on velocity only (evaluated once per node).
double phase_integral_velocity(const PhaseField& f, const std::function<double(const Vec3&)>& weight);

}  // namespace kinetic
