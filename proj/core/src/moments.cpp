#include "kinetic/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kinetic/error.hpp"
#include "kinetic/summation.hpp"

namespace kinetic {
namespace {

// w_a * rho_i * |xi|^m for every velocity node, shell-major.
std::vector<double> velocity_weights(const VelocityGrid& vg, double m) {
  const std::size_t A = vg.angle_count();
  std::vector<double> w(vg.shell_count() * A);
  for (std::size_t i = 0; i < vg.shell_count(); ++i) {
    const double radial = vg.radial_weights()[i] * (m == 0.0 ? 1.0 : std::pow(vg.speeds()[i], m));
    for (std::size_t a = 0; a < A; ++a) w[i * A + a] = radial * vg.angular_weights()[a];
  }
  return w;
}

std::vector<double> weighted_cell_sums(const PhaseField& f, const std::vector<double>& w) {
  const std::size_t cells = f.grid().spatial().cell_count();
  std::vector<double> out(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const auto block = f.cell_block(c);
    CompensatedSum s;
    for (std::size_t k = 0; k < block.size(); ++k) s.add(w[k] * block[k]);
    out[c] = s.value();
  }
  return out;
}

}  // namespace

std::vector<double> density(const PhaseField& f) {
  return weighted_cell_sums(f, velocity_weights(f.grid().velocity(), 0.0));
}

MomentSet compute_moments(const PhaseField& f, double m) {
  if (!(m >= 0.0)) throw DomainError("moment order must be nonnegative");
  const auto& vg = f.grid().velocity();
  const std::size_t A = vg.angle_count();
  MomentSet out;
  out.order = m;
  out.density = density(f);
  out.absolute = weighted_cell_sums(f, velocity_weights(vg, m));
  const auto w0 = velocity_weights(vg, 0.0);
  const std::size_t cells = f.grid().spatial().cell_count();
  out.current.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const auto block = f.cell_block(c);
    std::array<CompensatedSum, 3> s;
    for (std::size_t k = 0; k < block.size(); ++k) {
      const Vec3 xi = vg.velocity(k / A, k % A);
      for (int d = 0; d < 3; ++d) s[d].add(xi[d] * w0[k] * block[k]);
    }
    out.current[c] = {s[0].value(), s[1].value(), s[2].value()};
  }
  return out;
}

double energy_functional(const PhaseField& f, double m) {
  if (!(m >= 0.0)) throw DomainError("moment order must be nonnegative");
  const auto& vg = f.grid().velocity();
  std::vector<double> speed_weight(vg.shell_count());
  for (std::size_t i = 0; i < vg.shell_count(); ++i) speed_weight[i] = 1.0 + std::pow(vg.speeds()[i], m);
  const auto& g = f.grid();
  const auto values = f.values();
  CompensatedSum sum;
  for (std::size_t c = 0; c < g.spatial().cell_count(); ++c) {
    for (std::size_t i = 0; i < vg.shell_count(); ++i) {
      for (std::size_t a = 0; a < vg.angle_count(); ++a) {
        sum.add(speed_weight[i] * values[g.index(c, i, a)] * g.node_measure(i, a));
      }
    }
  }
  return sum.value();
}

double spatial_lr_norm(const SpatialGrid& grid, const std::vector<double>& values, double r) {
  if (!(r >= 1.0)) throw DomainError("L^r norm requires r >= 1");
  CompensatedSum s;
  for (double v : values) s.add(std::pow(std::abs(v), r));
  return std::pow(grid.cell_volume() * s.value(), 1.0 / r);
}

InterpolationBound interpolation_bound(const PhaseField& f, double p, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("interpolation cutoff R must be positive");
  if (!(p >= 1.0)) throw DomainError("interpolation order p must be at least 1");
  InterpolationBound out;
  out.p = p;
  out.radius = radius;
  out.sup_norm = f.sup_norm();
  out.lhs = density(f);
  const auto mp = weighted_cell_sums(f, velocity_weights(f.grid().velocity(), p));
  const double ball = kBallConstant * radius * radius * radius * out.sup_norm;
  const double scale = std::pow(radius, -p);
  out.rhs.resize(mp.size());
  for (std::size_t c = 0; c < mp.size(); ++c) out.rhs[c] = ball + scale * mp[c];

  const auto& sg = f.grid().spatial();
  out.norm_lhs = spatial_lr_norm(sg, out.lhs, (3.0 + p) / 3.0);
  const double total_mp = sg.cell_volume() * compensated_sum(mp);
  out.norm_rhs = kBallConstant * (out.sup_norm + 1.0) * std::pow(total_mp, 3.0 / (3.0 + p));
  return out;
}

OptimalRadiusBound optimal_radius_bound(const PhaseField& f, double p) {
  if (!(p >= 1.0)) throw DomainError("interpolation order p must be at least 1");
  OptimalRadiusBound out;
  const double sup = f.sup_norm();
  out.lhs = density(f);
  const auto mp = weighted_cell_sums(f, velocity_weights(f.grid().velocity(), p));
  out.rhs.resize(mp.size());
  out.collapsed.resize(mp.size());
  for (std::size_t c = 0; c < mp.size(); ++c) {
    if (mp[c] <= 0.0) {
      // Every shell has positive speed, so M_p = 0 forces n = 0.
      out.rhs[c] = 0.0;
      out.collapsed[c] = 0.0;
      continue;
    }
    const double R = std::pow(mp[c], 1.0 / (3.0 + p));
    out.rhs[c] = kBallConstant * R * R * R * sup + std::pow(R, -p) * mp[c];
    out.collapsed[c] = kBallConstant * (sup + 1.0) * std::pow(mp[c], 3.0 / (3.0 + p));
  }
  return out;
}

MomentNormBound moment_norm_bound(const PhaseField& f, double m, double p) {
  if (!(m >= 0.0)) throw DomainError("moment order m must be nonnegative");
  if (!(p > m)) throw DomainError("moment norm bound requires p > m");
  const auto& vg = f.grid().velocity();
  const auto& sg = f.grid().spatial();
  const auto mm = weighted_cell_sums(f, velocity_weights(vg, m));
  const auto mp = weighted_cell_sums(f, velocity_weights(vg, p));
  MomentNormBound out;
  out.constant = std::max(4.0 * std::numbers::pi / (3.0 + m), 1.0);
  out.lhs = spatial_lr_norm(sg, mm, (3.0 + p) / (3.0 + m));
  const double total_mp = sg.cell_volume() * compensated_sum(mp);
  out.rhs = out.constant * (f.sup_norm() + 1.0) * std::pow(total_mp, (3.0 + m) / (3.0 + p));
  return out;
}

}  // namespace kinetic
