#pragma once

#include <vector>

#include "kinetic/grid.hpp"

namespace kinetic {

/// Velocity moments of a field, one entry per spatial cell.
struct MomentSet {
  double order = 0.0;
  std::vector<double> density;   ///< n(x) = sum f dxi
  std::vector<Vec3> current;     ///< j(x) = sum xi f dxi
  std::vector<double> absolute;  ///< M_m(x) = sum |xi|^m f dxi
};

MomentSet compute_moments(const PhaseField& f, double m);

/// Density n(x) only; the hot path of the damping term.
std::vector<double> density(const PhaseField& f);

/// E_m = integral of (1 + |xi|^m) f over phase space.
double energy_functional(const PhaseField& f, double m);

/// Unit-ball volume, the constant of the density interpolation bound.
inline constexpr double kBallConstant = 4.18879020478639098461685784437267051;  // 4 pi / 3

/// Discrete spatial L^r norm: (sum_cells h^dim |v|^r)^(1/r).
double spatial_lr_norm(const SpatialGrid& grid, const std::vector<double>& values, double r);

/// Pointwise density bound n(x) <= C R^3 |f|_inf + R^-p M_p(x), plus its
/// integrated counterpart with the optimizing radius.
struct InterpolationBound {
  double p = 0.0;
  double radius = 0.0;
  double sup_norm = 0.0;
  std::vector<double> lhs;  ///< n(x)
  std::vector<double> rhs;  ///< C R^3 |f|_inf + R^-p M_p(x)
  /// ||n||_{L^{(3+p)/3}} and C (|f|_inf + 1) (integral |xi|^p f)^{3/(3+p)}.
  double norm_lhs = 0.0;
  double norm_rhs = 0.0;
};

InterpolationBound interpolation_bound(const PhaseField& f, double p, double radius);

/// The same bound at the per-cell optimal radius R(x) = M_p(x)^{1/(3+p)}.
struct OptimalRadiusBound {
  std::vector<double> lhs;       ///< n(x)
  std::vector<double> rhs;       ///< C R^3 |f|_inf + R^-p M_p(x) at R(x)
  std::vector<double> collapsed; ///< C (|f|_inf + 1) M_p(x)^{3/(3+p)}
};

OptimalRadiusBound optimal_radius_bound(const PhaseField& f, double p);

/// Norm bound for the m-weighted density:
/// ||M_m||_{L^{(3+p)/(3+m)}} <= C (|f|_inf + 1) (integral |xi|^p f)^{(3+m)/(3+p)},
/// with C = max(4 pi / (3 + m), 1) from the same radius optimization.
struct MomentNormBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
};

MomentNormBound moment_norm_bound(const PhaseField& f, double m, double p);

}  // namespace kinetic
