#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kinetic/grid.hpp"

namespace kinetic {

/// Angular redistribution profile g(c), c = cos of the angle between the
/// pre- and post-jump directions.
struct AngularProfile {
  enum class Kind { isotropic, forward_peaked, custom };

  Kind kind = Kind::isotropic;
  double kappa = 0.0;
  std::string name = "isotropic";
  std::function<double(double)> g;

  static AngularProfile isotropic();
  /// g(c) = exp(kappa * c).
  static AngularProfile forward_peaked(double kappa);
  static AngularProfile custom(std::string name, std::function<double(double)> g);

  /// Both menu profiles depend on the relative angle only.
  [[nodiscard]] bool rotation_invariant() const { return kind != Kind::custom; }
};

/// Speed-preserving scattering kernel. One angular matrix G[a][a'] is shared
/// by every speed shell; it never couples different shells.
class ScatteringKernel {
 public:
  /// Wraps a raw matrix without normalizing it. build_kernel is the normal
  /// constructor; this one exists so checks can be exercised on defective input.
  ScatteringKernel(std::shared_ptr<const VelocityGrid> grid, std::vector<double> matrix, double lambda);

  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] const VelocityGrid& grid() const { return *grid_; }
  [[nodiscard]] std::size_t size() const { return grid_->angle_count(); }
  /// G[a][a'] (density of the new direction a given the old direction a').
  [[nodiscard]] double operator()(std::size_t a, std::size_t a_prev) const { return matrix_[a * size() + a_prev]; }
  /// Row-major G.
  [[nodiscard]] std::span<const double> matrix() const { return matrix_; }
  /// Row-major P[a][a'] = w_a' G[a][a'], the gain operator per shell.
  [[nodiscard]] std::span<const double> gain_matrix() const { return gain_; }

  /// out[a] = sum_a' P[a][a'] in[a'] for one shell's angular block.
  void apply_gain(std::span<const double> in, std::span<double> out) const;

 private:
  std::shared_ptr<const VelocityGrid> grid_;
  std::vector<double> matrix_;
  std::vector<double> gain_;
  double lambda_;
};

/// G[a][a'] = g(u_a . u_a') / sum_b w_b g(u_b . u_a'). Throws DomainError for
/// lambda < 0, a negative profile value, or a column whose normalization
/// vanishes. lambda = 0 is accepted as the no-scattering limit.
ScatteringKernel build_kernel(const AngularProfile& profile, std::shared_ptr<const VelocityGrid> grid,
                              double lambda);

/// H(s) = s^-3, the self-similarity scaling of a speed-preserving kernel.
double self_similar_H(double speed);

/// max_a sum_a' w_a' G[a][a'].
double reverse_mass_bound(const ScatteringKernel& kernel);

/// max_a' |sum_a w_a G[a][a'] - 1|.
double normalization_defect(const ScatteringKernel& kernel);

/// |K_bar(rotated grid) - K_bar(grid)| for the kernel rebuilt on the grid
/// mapped through `rotation`.
double rotation_invariance_residual(const AngularProfile& profile, const std::shared_ptr<const VelocityGrid>& grid,
                                    double lambda, const Mat3& rotation);

/// Rotation matrix from a unit quaternion (w, x, y, z); input need not be normalized.
Mat3 rotation_from_quaternion(double w, double x, double y, double z);

/// Q2(f) = -lambda f + lambda P f, per cell and shell.
PhaseField apply_Q2(const PhaseField& f, const ScatteringKernel& kernel);

/// |integral of Q2(f) (1 + |xi|^m)| over phase space.
double collision_invariant_defect(const PhaseField& f, const ScatteringKernel& kernel, double m);

}  // namespace kinetic
