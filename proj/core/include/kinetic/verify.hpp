#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kinetic/dynamics.hpp"
#include "kinetic/kernel.hpp"

namespace kinetic {

/// E_m(t) + D_m(t) - E_m(0) per node, D_m the accumulated damping
/// integral of mu(n) (1+|xi|^m) f by the trapezoid rule.
struct EnergyLedger {
  double order = 0.0;
  std::vector<double> time;
  std::vector<double> energy;
  std::vector<double> damping;
  std::vector<double> residual;

  [[nodiscard]] double max_abs_residual() const;
  /// max |r| / E_m(0); 0 for a zero trajectory.
  [[nodiscard]] double max_relative_residual() const;
};

EnergyLedger energy_ledger(const Trajectory& traj, const DampingModel& mu, double m);

/// Integral of |xi|^{3+m} f at each node, and its supremum: the constant of
/// the moment hypothesis behind energy conservation. Always finite on a
/// truncated velocity grid; reported rather than tested.
struct MomentHypothesis {
  std::vector<double> by_node;
  double sup = 0.0;
};

MomentHypothesis moment_hypothesis(const Trajectory& traj, double m);

/// Separable test function phi(t, x, xi) = psi(t) X(x) V(xi) with analytic
/// derivatives. psi(T) must vanish.
struct TestFunction {
  std::string name;
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  std::function<double(const Vec3&)> X;
  std::function<Vec3(const Vec3&)> grad_X;
  std::function<double(const Vec3&)> V;
};

/// The five shipped test functions, adapted to the box and horizon.
std::vector<TestFunction> standard_test_battery(const SpatialGrid& grid, double horizon);

struct WeakFormResidual {
  std::string name;
  double residual = 0.0;
  /// Quadrature of the absolute integrands of all terms; never cancels.
  double scale = 0.0;
  [[nodiscard]] double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};

/// Discrete weak form of f_t + xi.grad f = -mu(n) f - lambda f + lambda P f:
///   int f0 phi(0) + int int f (phi_t + xi.grad phi) - int int mu(n) f phi
///   - lambda int int f phi + lambda int int (P f) phi,
/// midpoint rule in x, velocity quadrature in xi, trapezoid in t.
/// Throws DomainError if some psi does not vanish at T.
std::vector<WeakFormResidual> weak_form_residual(const Trajectory& traj, const ScatteringKernel& kernel,
                                                 const DampingModel& mu, std::span<const TestFunction> battery);

/// Discrete periodic convolution with the normalized bump (1 - (r/eps)^2)^2,
/// r < eps, sampled on the lattice of cell offsets.
class Mollifier {
 public:
  /// eps = 0 (or narrower than one cell) gives the identity stencil.
  /// Throws DomainError for eps < 0 or eps above half the box on any active axis.
  Mollifier(const SpatialGrid& grid, double eps);

  [[nodiscard]] double epsilon() const { return eps_; }
  [[nodiscard]] std::size_t stencil_size() const { return weights_.size(); }
  [[nodiscard]] std::span<const double> weights() const { return weights_; }
  [[nodiscard]] double stencil_sum() const;

  /// One value per cell.
  [[nodiscard]] std::vector<double> apply(std::span<const double> values) const;
  /// Convolves every velocity slice.
  [[nodiscard]] DistributionField apply(const DistributionField& f) const;

 private:
  const SpatialGrid* grid_;
  double eps_;
  std::vector<std::array<int, 3>> offsets_;
  std::vector<double> weights_;
};

std::vector<double> mollify(const SpatialGrid& grid, std::span<const double> values, double eps);
DistributionField mollify(const DistributionField& f, double eps);

struct CommutationDefect {
  double defect = 0.0;  ///< max_x |int (mollify f) h dxi - mollify(int f h dxi)|
  double scale = 0.0;   ///< max_x int |f h| dxi
};

CommutationDefect commutation_defect(const DistributionField& f, const std::function<double(const Vec3&)>& h,
                                     double eps);

struct InitialDataLimitRow {
  double eps = 0.0;
  double energy = 0.0;  ///< E_m(mollify(f0, eps))
  double defect = 0.0;  ///< |E_m(mollify(f0, eps)) - E_m(f0)|
};

/// Requires a strictly decreasing sequence of widths.
std::vector<InitialDataLimitRow> initial_data_limit(const DistributionField& f0, double m,
                                                    std::span<const double> eps_sequence);

}  // namespace kinetic
