#pragma once

#include <cstddef>
#include <vector>

#include "kinetic/dynamics.hpp"
#include "kinetic/error.hpp"
#include "kinetic/kernel.hpp"

namespace kinetic {

struct PicardConfig {
  double horizon = 1.0;
  std::size_t steps = 100;
  double tol_abs = 1e-12;
  double tol_rel = 1e-10;
  std::size_t max_iter = 60;
  double moment_order = 3.0;

  /// Throws DomainError if any field is out of range.
  void validate() const;
};

/// Diagnostics of one iterate f_k over all time nodes.
struct IterateRecord {
  std::size_t k = 0;
  double diff_sup = 0.0;  ///< max_j |f_k(t_j) - f_{k-1}(t_j)|_inf
  double sup_norm = 0.0;  ///< max_j |f_k(t_j)|_inf
  std::vector<double> sup_by_node;
  std::vector<double> energy_by_node;  ///< E_m(f_k(t_j))
};

struct IterateTrace {
  std::vector<IterateRecord> iterates;
  double moment_order = 0.0;
  double initial_sup = 0.0;     ///< |f^0|_inf
  double initial_energy = 0.0;  ///< E_m(f^0)
  double reverse_mass = 0.0;    ///< K_bar of the kernel used
  double lambda = 0.0;
  /// K = max{A, B, sup a_0} for the sup-norm and energy recursions.
  double gronwall_K_sup = 0.0;
  double gronwall_K_energy = 0.0;
  bool converged = false;
  /// Smallest k whose iterate is already a fixed point within tolerance.
  std::size_t fixed_point_iterate = 0;
};

/// K e^{K t} with K = max{A, B, sup_a0}. Throws DomainError on negative input.
double gronwall_envelope(double A, double B, double sup_a0, double t);

/// Trajectory of zeros on the configured nodes: the seed f_0 of the iteration.
Trajectory zero_trajectory(const PhaseGridPtr& grid, const PicardConfig& cfg);

/// One Picard sweep: the Duhamel formula along backward characteristics
/// X(s) = x - (t_j - s) xi, with n_prev and the gain of f_prev interpolated
/// at X(s) and both time integrals done by the trapezoid rule on the nodes.
Trajectory duhamel_apply(const Trajectory& prev, const DistributionField& f0, const ScatteringKernel& kernel,
                         const DampingModel& mu, const PicardConfig& cfg);

struct PicardResult {
  Trajectory trajectory;  ///< converged iterate f_k
  Trajectory previous;    ///< f_{k-1}
  IterateTrace trace;
};

/// Raised when the iteration cap is reached; carries the trace so far.
class PicardDivergence : public KineticError {
 public:
  PicardDivergence(const std::string& what, IterateTrace trace)
      : KineticError(what), trace_(std::move(trace)) {}
  [[nodiscard]] const IterateTrace& trace() const { return trace_; }

 private:
  IterateTrace trace_;
};

/// Iterates duhamel_apply from the zero seed until
/// max_j |f_k - f_{k-1}|_inf <= tol_abs + tol_rel |f_k|_inf.
PicardResult run_picard(const DistributionField& f0, const ScatteringKernel& kernel, const DampingModel& mu,
                        const PicardConfig& cfg);

struct GronwallBoundCheck {
  bool pass = true;
  std::size_t violations = 0;
  double worst_margin = 0.0;  ///< min over (k, t) of (envelope - value) / envelope
};

struct GronwallReport {
  GronwallBoundCheck sup_norm;  ///< |f_k(t)|_inf <= envelope(|f^0|_inf, lambda K_bar, |f^0|_inf, t)
  GronwallBoundCheck energy;    ///< E_m(f_k(t)) <= envelope(E_m(f^0), lambda, 0, t)
  [[nodiscard]] bool pass() const { return sup_norm.pass && energy.pass; }
};

GronwallReport check_gronwall_trace(const IterateTrace& trace, const PicardConfig& cfg, double reverse_mass,
                                    double lambda);

/// Per-node residual of the iterate energy balance
/// E_m(f_k(t)) + int_0^t int mu(n_{k-1}) (1+|xi|^m) f_k + lambda int_0^t E_m(f_k)
///   - lambda int_0^t E_m(f_{k-1}) - E_m(f^0),
/// with trapezoid time integrals.
std::vector<double> iterate_energy_residual(const Trajectory& current, const Trajectory& previous,
                                            const DampingModel& mu, double lambda, double m);

}  // namespace kinetic
