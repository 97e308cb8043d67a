#include "kinetic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kinetic/error.hpp"
#include "kinetic/moments.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/summation.hpp"

namespace kinetic {

double EnergyLedger::max_abs_residual() const {
  double r = 0.0;
  for (double v : residual) r = std::max(r, std::abs(v));
  return r;
}

double EnergyLedger::max_relative_residual() const {
  const double r = max_abs_residual();
  if (energy.empty() || energy.front() == 0.0) return r;
  return r / energy.front();
}

EnergyLedger energy_ledger(const Trajectory& traj, const DampingModel& mu, double m) {
  EnergyLedger ledger;
  ledger.order = m;
  const std::size_t nodes = traj.size();
  std::vector<double> power(nodes);
  ledger.time.resize(nodes);
  ledger.energy.resize(nodes);
  parallel_for(nodes, [&](std::size_t j) {
    ledger.time[j] = traj.time(j);
    ledger.energy[j] = energy_functional(traj[j], m);
    power[j] = damping_power(traj[j], density(traj[j]), mu, m);
  });
  ledger.damping.assign(nodes, 0.0);
  ledger.residual.assign(nodes, 0.0);
  const double dt = traj.dt();
  for (std::size_t j = 1; j < nodes; ++j) {
    ledger.damping[j] = ledger.damping[j - 1] + 0.5 * dt * (power[j] + power[j - 1]);
  }
  for (std::size_t j = 0; j < nodes; ++j) {
    ledger.residual[j] = ledger.energy[j] + ledger.damping[j] - ledger.energy[0];
  }
  return ledger;
}

MomentHypothesis moment_hypothesis(const Trajectory& traj, double m) {
  MomentHypothesis out;
  out.by_node.resize(traj.size());
  const double q = 3.0 + m;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    out.by_node[j] = phase_integral_velocity(traj[j], [q](const Vec3& xi) { return std::pow(std::sqrt(dot(xi, xi)), q); });
    out.sup = std::max(out.sup, out.by_node[j]);
  }
  return out;
}

std::vector<TestFunction> standard_test_battery(const SpatialGrid& grid, double horizon) {
  const double T = horizon;
  const int dim = grid.dim();
  Vec3 k{};
  for (int d = 0; d < dim; ++d) k[d] = 2.0 * std::numbers::pi / grid.extent(d);
  const int last = dim - 1;

  std::vector<TestFunction> battery;
  battery.push_back({"cos-t_sin-x1_unit-xi",
                     [T](double t) { return std::cos(0.5 * std::numbers::pi * t / T); },
                     [T](double t) { return -0.5 * std::numbers::pi / T * std::sin(0.5 * std::numbers::pi * t / T); },
                     [k](const Vec3& x) { return std::sin(k[0] * x[0]); },
                     [k](const Vec3& x) { return Vec3{k[0] * std::cos(k[0] * x[0]), 0.0, 0.0}; },
                     [](const Vec3&) { return 1.0; }});
  battery.push_back({"quad-t_cos-x1_xi1",
                     [T](double t) { return (1.0 - t / T) * (1.0 - t / T); },
                     [T](double t) { return -2.0 * (1.0 - t / T) / T; },
                     [k](const Vec3& x) { return std::cos(k[0] * x[0]); },
                     [k](const Vec3& x) { return Vec3{-k[0] * std::sin(k[0] * x[0]), 0.0, 0.0}; },
                     [](const Vec3& xi) { return xi[0]; }});
  battery.push_back({"parab-t_shifted-sin_speed2",
                     [T](double t) { return 1.0 - (t / T) * (t / T); },
                     [T](double t) { return -2.0 * t / (T * T); },
                     [k](const Vec3& x) { return 1.0 + 0.5 * std::sin(2.0 * k[0] * x[0] + 0.3); },
                     [k](const Vec3& x) { return Vec3{k[0] * std::cos(2.0 * k[0] * x[0] + 0.3), 0.0, 0.0}; },
                     [](const Vec3& xi) { return dot(xi, xi); }});
  // Products over every active axis.
  battery.push_back({"damped-t_cos-product_linear-xi",
                     [T](double t) { return std::exp(-t / T) * (1.0 - t / T); },
                     [T](double t) { return -std::exp(-t / T) * (2.0 - t / T) / T; },
                     [k, dim](const Vec3& x) {
                       double v = 1.0;
                       for (int d = 0; d < dim; ++d) v *= std::cos(k[d] * x[d]);
                       return v;
                     },
                     [k, dim](const Vec3& x) {
                       Vec3 g{};
                       for (int d = 0; d < dim; ++d) {
                         double v = -k[d] * std::sin(k[d] * x[d]);
                         for (int e = 0; e < dim; ++e) {
                           if (e != d) v *= std::cos(k[e] * x[e]);
                         }
                         g[d] = v;
                       }
                       return g;
                     },
                     [last](const Vec3& xi) { return 1.0 + 0.5 * xi[last]; }});
  battery.push_back({"bump-t_diagonal-sin_gauss-xi",
                     [T](double t) {
                       const double u = 1.0 - (t / T) * (t / T);
                       return u * u;
                     },
                     [T](double t) { return -4.0 * t / (T * T) * (1.0 - (t / T) * (t / T)); },
                     [k, dim](const Vec3& x) {
                       double arg = 0.0;
                       for (int d = 0; d < dim; ++d) arg += k[d] * x[d];
                       return std::sin(arg);
                     },
                     [k, dim](const Vec3& x) {
                       double arg = 0.0;
                       for (int d = 0; d < dim; ++d) arg += k[d] * x[d];
                       Vec3 g{};
                       for (int d = 0; d < dim; ++d) g[d] = k[d] * std::cos(arg);
                       return g;
                     },
                     [](const Vec3& xi) { return std::exp(-0.5 * dot(xi, xi)); }});
  return battery;
}

std::vector<WeakFormResidual> weak_form_residual(const Trajectory& traj, const ScatteringKernel& kernel,
                                                 const DampingModel& mu, std::span<const TestFunction> battery) {
  const double T = traj.horizon();
  for (const auto& phi : battery) {
    const double end = std::abs(phi.psi(T));
    if (end > 1e-12 * std::max(1.0, std::abs(phi.psi(0.0)))) {
      throw DomainError("test function '" + phi.name + "' does not vanish at t = T");
    }
  }
  const PhaseGrid& g = traj.grid();
  if (!(g.velocity() == kernel.grid())) throw GridMismatch("weak_form_residual: kernel velocity grid differs");
  const SpatialGrid& sg = g.spatial();
  const VelocityGrid& vg = g.velocity();
  const std::size_t cells = sg.cell_count();
  const std::size_t S = vg.shell_count();
  const std::size_t A = vg.angle_count();
  const std::size_t slices = S * A;
  const double lambda = kernel.lambda();
  const double dt = traj.dt();
  const std::size_t nodes = traj.size();

  std::vector<WeakFormResidual> out(battery.size());
  parallel_for(battery.size(), [&](std::size_t p) {
    const TestFunction& phi = battery[p];
    std::vector<double> X(cells);
    std::vector<Vec3> grad(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      const Vec3 x = sg.center(c);
      X[c] = phi.X(x);
      grad[c] = phi.grad_X(x);
    }
    std::vector<double> V(slices);
    std::vector<Vec3> xi(slices);
    std::vector<double> measure(slices);
    for (std::size_t i = 0; i < S; ++i) {
      for (std::size_t a = 0; a < A; ++a) {
        xi[i * A + a] = vg.velocity(i, a);
        V[i * A + a] = phi.V(xi[i * A + a]);
        measure[i * A + a] = g.node_measure(i, a);
      }
    }
    // Transport uses only the active components of xi.
    for (auto& v : xi) {
      for (int d = sg.dim(); d < 3; ++d) v[d] = 0.0;
    }

    CompensatedSum initial, transport, damping, loss, gain, magnitude;
    std::vector<double> pf(A);
    for (std::size_t j = 0; j < nodes; ++j) {
      const double t = traj.time(j);
      const double tw = (j == 0 || j + 1 == nodes) ? 0.5 * dt : dt;
      const double psi = phi.psi(t);
      const double dpsi = phi.dpsi(t);
      const auto vals = traj[j].values();
      const auto n = density(traj[j]);
      for (std::size_t c = 0; c < cells; ++c) {
        const double rate = mu.rate(n[c]);
        const double* fc = vals.data() + c * slices;
        for (std::size_t i = 0; i < S; ++i) {
          if (lambda > 0.0) kernel.apply_gain(std::span<const double>(fc + i * A, A), pf);
          for (std::size_t a = 0; a < A; ++a) {
            const std::size_t k = i * A + a;
            const double w = measure[k] * V[k];
            const double f = fc[k];
            auto put = [&magnitude](CompensatedSum& sum, double v) {
              sum.add(v);
              magnitude.add(std::abs(v));
            };
            if (j == 0) put(initial, f * psi * X[c] * w);
            put(transport, tw * f * (dpsi * X[c] + psi * dot(xi[k], grad[c])) * w);
            if (rate != 0.0) put(damping, -tw * rate * f * psi * X[c] * w);
            if (lambda > 0.0) {
              put(loss, -tw * lambda * f * psi * X[c] * w);
              put(gain, tw * lambda * pf[a] * psi * X[c] * w);
            }
          }
        }
      }
    }
    const double terms[] = {initial.value(), transport.value(), damping.value(), loss.value(), gain.value()};
    CompensatedSum total;
    for (double v : terms) total.add(v);
    out[p] = WeakFormResidual{phi.name, total.value(), magnitude.value()};
  });
  return out;
}

Mollifier::Mollifier(const SpatialGrid& grid, double eps) : grid_(&grid), eps_(eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("mollifier width eps must be finite and nonnegative");
  for (int d = 0; d < grid.dim(); ++d) {
    if (eps > 0.5 * grid.extent(d)) {
      std::ostringstream msg;
      msg << "mollifier width " << eps << " exceeds half the box on axis " << d << " (L/2 = " << 0.5 * grid.extent(d)
          << ")";
      throw DomainError(msg.str());
    }
  }
  if (eps == 0.0) {
    offsets_.push_back({0, 0, 0});
    weights_.push_back(1.0);
    return;
  }
  std::array<int, 3> reach{0, 0, 0};
  for (int d = 0; d < grid.dim(); ++d) reach[d] = static_cast<int>(std::floor(eps / grid.width(d)));
  double total = 0.0;
  for (int o2 = -reach[2]; o2 <= reach[2]; ++o2) {
    for (int o1 = -reach[1]; o1 <= reach[1]; ++o1) {
      for (int o0 = -reach[0]; o0 <= reach[0]; ++o0) {
        const std::array<int, 3> o{o0, o1, o2};
        double r2 = 0.0;
        for (int d = 0; d < grid.dim(); ++d) r2 += std::pow(o[d] * grid.width(d), 2);
        const double u = r2 / (eps * eps);
        if (u >= 1.0) continue;
        const double w = (1.0 - u) * (1.0 - u);
        offsets_.push_back(o);
        weights_.push_back(w);
        total += w;
      }
    }
  }
  for (double& w : weights_) w /= total;
}

double Mollifier::stencil_sum() const { return compensated_sum(weights_); }

std::vector<double> Mollifier::apply(std::span<const double> values) const {
  const std::size_t cells = grid_->cell_count();
  if (values.size() != cells) throw GridMismatch("Mollifier::apply: value count differs from cell count");
  std::vector<double> out(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const auto ijk = grid_->coords(c);
    CompensatedSum s;
    for (std::size_t k = 0; k < offsets_.size(); ++k) {
      std::array<int, 3> src{};
      for (int d = 0; d < 3; ++d) {
        const int n = grid_->cells(d);
        src[d] = ((ijk[d] - offsets_[k][d]) % n + n) % n;
      }
      s.add(weights_[k] * values[grid_->index(src)]);
    }
    out[c] = s.value();
  }
  return out;
}

DistributionField Mollifier::apply(const DistributionField& f) const {
  if (!(f.grid().spatial() == *grid_)) throw GridMismatch("Mollifier::apply: field lives on a different spatial grid");
  const std::size_t cells = grid_->cell_count();
  const std::size_t slices = f.grid().velocity_nodes();
  std::vector<double> values(f.values().size());
  const auto src = f.values();
  parallel_for(slices, [&](std::size_t k) {
    std::vector<double> slice(cells);
    for (std::size_t c = 0; c < cells; ++c) slice[c] = src[c * slices + k];
    const auto smooth = apply(slice);
    for (std::size_t c = 0; c < cells; ++c) values[c * slices + k] = smooth[c];
  });
  return DistributionField(f.grid_ptr(), std::move(values), f.time());
}

std::vector<double> mollify(const SpatialGrid& grid, std::span<const double> values, double eps) {
  return Mollifier(grid, eps).apply(values);
}

DistributionField mollify(const DistributionField& f, double eps) {
  return Mollifier(f.grid().spatial(), eps).apply(f);
}

namespace {

std::vector<double> velocity_integral(const PhaseField& f, std::span<const double> weight, bool absolute) {
  const std::size_t cells = f.grid().spatial().cell_count();
  const std::size_t slices = weight.size();
  const auto vals = f.values();
  std::vector<double> out(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    CompensatedSum s;
    for (std::size_t k = 0; k < slices; ++k) {
      const double v = weight[k] * vals[c * slices + k];
      s.add(absolute ? std::abs(v) : v);
    }
    out[c] = s.value();
  }
  return out;
}

}  // namespace

CommutationDefect commutation_defect(const DistributionField& f, const std::function<double(const Vec3&)>& h,
                                     double eps) {
  const VelocityGrid& vg = f.grid().velocity();
  const std::size_t A = vg.angle_count();
  std::vector<double> weight(f.grid().velocity_nodes());
  for (std::size_t i = 0; i < vg.shell_count(); ++i) {
    for (std::size_t a = 0; a < A; ++a) {
      weight[i * A + a] = h(vg.velocity(i, a)) * vg.radial_weights()[i] * vg.angular_weights()[a];
    }
  }
  const Mollifier mol(f.grid().spatial(), eps);
  const auto lhs = velocity_integral(mol.apply(f), weight, false);
  const auto rhs = mol.apply(velocity_integral(f, weight, false));
  const auto mag = velocity_integral(f, weight, true);
  CommutationDefect out;
  for (std::size_t c = 0; c < lhs.size(); ++c) {
    out.defect = std::max(out.defect, std::abs(lhs[c] - rhs[c]));
    out.scale = std::max(out.scale, mag[c]);
  }
  return out;
}

std::vector<InitialDataLimitRow> initial_data_limit(const DistributionField& f0, double m,
                                                    std::span<const double> eps_sequence) {
  for (std::size_t k = 1; k < eps_sequence.size(); ++k) {
    if (!(eps_sequence[k] < eps_sequence[k - 1])) {
      throw DomainError("initial_data_limit: eps sequence must be strictly decreasing");
    }
  }
  const double reference = energy_functional(f0, m);
  std::vector<InitialDataLimitRow> rows;
  rows.reserve(eps_sequence.size());
  for (double eps : eps_sequence) {
    const double e = energy_functional(mollify(f0, eps), m);
    rows.push_back({eps, e, std::abs(e - reference)});
  }
  return rows;
}

}  // namespace kinetic
