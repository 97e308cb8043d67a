#include "kinetic/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kinetic/moments.hpp"
#include "kinetic/parallel.hpp"

namespace kinetic {

void PicardConfig::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("picard horizon T must be positive");
  if (steps < 1) throw DomainError("picard needs at least one time step");
  if (!(tol_abs > 0.0) || !(tol_rel > 0.0)) throw DomainError("picard tolerances must be positive");
  if (max_iter < 1) throw DomainError("picard max_iter must be at least 1");
  if (!(moment_order >= 0.0)) throw DomainError("moment order m must be nonnegative");
}

double gronwall_envelope(double A, double B, double sup_a0, double t) {
  if (A < 0.0 || B < 0.0 || sup_a0 < 0.0 || t < 0.0) {
    throw DomainError("gronwall_envelope requires nonnegative A, B, sup a0 and t");
  }
  const double K = std::max({A, B, sup_a0});
  return K * std::exp(K * t);
}

Trajectory zero_trajectory(const PhaseGridPtr& grid, const PicardConfig& cfg) {
  std::vector<DistributionField> fields;
  fields.reserve(cfg.steps + 1);
  const double dt = cfg.horizon / static_cast<double>(cfg.steps);
  for (std::size_t j = 0; j <= cfg.steps; ++j) fields.emplace_back(grid, static_cast<double>(j) * dt);
  return Trajectory(cfg.horizon, cfg.steps, std::move(fields));
}

namespace {

// Per-node data laid out slice-major: [node][velocity slice][cell].
struct SliceMajor {
  std::size_t cells = 0;
  std::size_t slices = 0;
  std::vector<double> data;

  [[nodiscard]] std::span<const double> at(std::size_t node, std::size_t slice) const {
    return std::span<const double>(data).subspan((node * slices + slice) * cells, cells);
  }
};

bool density_dependent(const DampingModel& mu) {
  return mu.c != 0.0 && (mu.kind == DampingModel::Kind::linear || mu.kind == DampingModel::Kind::saturating);
}

}  // namespace

Trajectory duhamel_apply(const Trajectory& prev, const DistributionField& f0, const ScatteringKernel& kernel,
                         const DampingModel& mu, const PicardConfig& cfg) {
  cfg.validate();
  if (prev.steps() != cfg.steps || std::abs(prev.horizon() - cfg.horizon) > 1e-12 * cfg.horizon) {
    throw GridMismatch("duhamel_apply: previous iterate is not on the configured time nodes");
  }
  require_same_grid(prev.grid(), f0.grid(), "duhamel_apply");
  if (!(f0.grid().velocity() == kernel.grid())) throw GridMismatch("duhamel_apply: kernel velocity grid differs");

  const PhaseGrid& g = f0.grid();
  const SpatialGrid& sg = g.spatial();
  const VelocityGrid& vg = g.velocity();
  const std::size_t cells = sg.cell_count();
  const std::size_t S = vg.shell_count();
  const std::size_t A = vg.angle_count();
  const std::size_t slices = S * A;
  const std::size_t nodes = cfg.steps + 1;
  const double dt = prev.dt();
  const double lambda = kernel.lambda();
  const bool nonlinear = density_dependent(mu);

  // Densities of the previous iterate, [node][cell].
  std::vector<std::vector<double>> n_prev(nodes);
  if (nonlinear) {
    for (std::size_t l = 0; l < nodes; ++l) n_prev[l] = density(prev[l]);
  }

  // Gain P f_prev, slice-major.
  SliceMajor gain{cells, slices, std::vector<double>(nodes * slices * cells, 0.0)};
  if (lambda > 0.0) {
    parallel_for(nodes, [&](std::size_t l) {
      std::vector<double> out(A);
      const auto src = prev[l].values();
      for (std::size_t c = 0; c < cells; ++c) {
        for (std::size_t i = 0; i < S; ++i) {
          kernel.apply_gain(src.subspan(g.index(c, i, 0), A), out);
          for (std::size_t a = 0; a < A; ++a) gain.data[(l * slices + i * A + a) * cells + c] = out[a];
        }
      }
    });
  }

  SliceMajor result{cells, slices, std::vector<double>(nodes * slices * cells, 0.0)};
  const auto f0v = f0.values();

  parallel_for(slices, [&](std::size_t slice) {
    const Vec3 xi = vg.velocity(slice / A, slice % A);
    std::vector<PeriodicShift> shifts;
    shifts.reserve(nodes);
    for (std::size_t d = 0; d < nodes; ++d) {
      const double s = static_cast<double>(d) * dt;
      shifts.emplace_back(sg, Vec3{s * xi[0], s * xi[1], s * xi[2]});
    }
    std::vector<double> initial(cells);
    for (std::size_t c = 0; c < cells; ++c) initial[c] = f0v[c * slices + slice];

    std::vector<double> exponent(cells);
    std::vector<double> q_here(cells);
    std::vector<double> q_next(cells);
    std::vector<double> acc(cells);
    std::vector<double> moved(cells);
    std::vector<double> n_moved(cells);
    const double damping_const = nonlinear ? 0.0 : mu.rate(0.0);

    for (std::size_t j = 0; j < nodes; ++j) {
      double* out = result.data.data() + (j * slices + slice) * cells;
      std::fill(exponent.begin(), exponent.end(), 0.0);
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t step = 0; step <= j; ++step) {
        const std::size_t l = j - step;  // walking back from t_j to 0
        const PeriodicShift& shift = shifts[step];
        if (nonlinear) {
          shift.apply(n_prev[l], n_moved);
          for (std::size_t c = 0; c < cells; ++c) q_here[c] = mu.rate(n_moved[c]) + lambda;
        } else {
          std::fill(q_here.begin(), q_here.end(), damping_const + lambda);
        }
        if (step > 0) {
          for (std::size_t c = 0; c < cells; ++c) exponent[c] += 0.5 * dt * (q_here[c] + q_next[c]);
        }
        if (lambda > 0.0 && j > 0) {
          const double w = (l == 0 || l == j) ? 0.5 * dt : dt;
          shift.apply(gain.at(l, slice), moved);
          for (std::size_t c = 0; c < cells; ++c) acc[c] += w * lambda * std::exp(-exponent[c]) * moved[c];
        }
        std::swap(q_here, q_next);
      }
      shifts[j].apply(initial, moved);
      for (std::size_t c = 0; c < cells; ++c) out[c] = std::exp(-exponent[c]) * moved[c] + acc[c];
    }
  });

  std::vector<DistributionField> fields;
  fields.reserve(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    std::vector<double> values(g.size());
    for (std::size_t slice = 0; slice < slices; ++slice) {
      const auto src = result.at(j, slice);
      for (std::size_t c = 0; c < cells; ++c) values[c * slices + slice] = src[c];
    }
    // The constructor rejects any negative entry: no clamping.
    fields.emplace_back(f0.grid_ptr(), std::move(values), prev.time(j));
  }
  return Trajectory(cfg.horizon, cfg.steps, std::move(fields));
}

namespace {

IterateRecord record_iterate(std::size_t k, const Trajectory& next, const Trajectory& prev, double m) {
  IterateRecord rec;
  rec.k = k;
  rec.sup_by_node.resize(next.size());
  rec.energy_by_node.resize(next.size());
  for (std::size_t j = 0; j < next.size(); ++j) {
    const auto a = next[j].values();
    const auto b = prev[j].values();
    double diff = 0.0;
    double sup = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) {
      diff = std::max(diff, std::abs(a[q] - b[q]));
      sup = std::max(sup, a[q]);
    }
    rec.diff_sup = std::max(rec.diff_sup, diff);
    rec.sup_by_node[j] = sup;
    rec.sup_norm = std::max(rec.sup_norm, sup);
    rec.energy_by_node[j] = energy_functional(next[j], m);
  }
  return rec;
}

}  // namespace

PicardResult run_picard(const DistributionField& f0, const ScatteringKernel& kernel, const DampingModel& mu,
                        const PicardConfig& cfg) {
  cfg.validate();
  f0.validate();
  IterateTrace trace;
  trace.moment_order = cfg.moment_order;
  trace.initial_sup = f0.sup_norm();
  trace.initial_energy = energy_functional(f0, cfg.moment_order);
  trace.reverse_mass = reverse_mass_bound(kernel);
  trace.lambda = kernel.lambda();
  trace.gronwall_K_sup = std::max({trace.initial_sup, trace.lambda * trace.reverse_mass, trace.initial_sup});
  trace.gronwall_K_energy = std::max({trace.initial_energy, trace.lambda, 0.0});

  Trajectory prev = zero_trajectory(f0.grid_ptr(), cfg);
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    Trajectory next = duhamel_apply(prev, f0, kernel, mu, cfg);
    IterateRecord rec = record_iterate(k, next, prev, cfg.moment_order);
    const bool done = rec.diff_sup <= cfg.tol_abs + cfg.tol_rel * rec.sup_norm;
    trace.iterates.push_back(std::move(rec));
    if (done) {
      trace.converged = true;
      trace.fixed_point_iterate = k - 1;
      return PicardResult{std::move(next), std::move(prev), std::move(trace)};
    }
    prev = std::move(next);
  }
  std::ostringstream msg;
  msg << "Picard iteration did not converge in " << cfg.max_iter << " iterations (last difference "
      << trace.iterates.back().diff_sup << "); consider a shorter horizon";
  throw PicardDivergence(msg.str(), std::move(trace));
}

GronwallReport check_gronwall_trace(const IterateTrace& trace, const PicardConfig& cfg, double reverse_mass,
                                    double lambda) {
  GronwallReport report;
  report.sup_norm.worst_margin = 1.0;
  report.energy.worst_margin = 1.0;
  const double dt = cfg.horizon / static_cast<double>(cfg.steps);
  auto check = [](GronwallBoundCheck& out, double value, double envelope) {
    const double margin = envelope > 0.0 ? (envelope - value) / envelope : (value <= 0.0 ? 0.0 : -1.0);
    out.worst_margin = std::min(out.worst_margin, margin);
    if (value > envelope * (1.0 + 1e-13)) {
      ++out.violations;
      out.pass = false;
    }
  };
  for (const auto& rec : trace.iterates) {
    for (std::size_t j = 0; j < rec.sup_by_node.size(); ++j) {
      const double t = static_cast<double>(j) * dt;
      check(report.sup_norm, rec.sup_by_node[j],
            gronwall_envelope(trace.initial_sup, lambda * reverse_mass, trace.initial_sup, t));
      check(report.energy, rec.energy_by_node[j], gronwall_envelope(trace.initial_energy, lambda, 0.0, t));
    }
  }
  return report;
}

std::vector<double> iterate_energy_residual(const Trajectory& current, const Trajectory& previous,
                                            const DampingModel& mu, double lambda, double m) {
  if (current.size() != previous.size()) throw GridMismatch("iterate_energy_residual: node counts differ");
  const std::size_t nodes = current.size();
  const double dt = current.dt();
  std::vector<double> e_cur(nodes);
  std::vector<double> e_prev(nodes);
  std::vector<double> damping(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    e_cur[j] = energy_functional(current[j], m);
    e_prev[j] = energy_functional(previous[j], m);
    damping[j] = damping_power(current[j], density(previous[j]), mu, m);
  }
  std::vector<double> residual(nodes);
  double int_damp = 0.0;
  double int_cur = 0.0;
  double int_prev = 0.0;
  for (std::size_t j = 0; j < nodes; ++j) {
    if (j > 0) {
      int_damp += 0.5 * dt * (damping[j] + damping[j - 1]);
      int_cur += 0.5 * dt * (e_cur[j] + e_cur[j - 1]);
      int_prev += 0.5 * dt * (e_prev[j] + e_prev[j - 1]);
    }
    residual[j] = e_cur[j] + int_damp + lambda * int_cur - lambda * int_prev - e_cur[0];
  }
  return residual;
}

}  // namespace kinetic
