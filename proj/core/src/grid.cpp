#include "kinetic/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "kinetic/error.hpp"
#include "kinetic/summation.hpp"

namespace kinetic {

SpatialGrid::SpatialGrid(int dim, std::array<double, 3> extent, std::array<int, 3> cells)
    : dim_(dim), extent_(extent), cells_(cells) {
  if (dim < 1 || dim > 3) throw DomainError("spatial dimension must be 1, 2 or 3");
  cell_count_ = 1;
  cell_volume_ = 1.0;
  for (int d = 0; d < 3; ++d) {
    if (d >= dim) {
      extent_[d] = 1.0;
      cells_[d] = 1;
      continue;
    }
    if (!(extent_[d] > 0.0) || !std::isfinite(extent_[d])) {
      throw DomainError("spatial extent along axis " + std::to_string(d) + " must be positive");
    }
    if (cells_[d] < 2) {
      throw DomainError("cell count along axis " + std::to_string(d) + " must be at least 2");
    }
    cell_count_ *= static_cast<std::size_t>(cells_[d]);
    cell_volume_ *= extent_[d] / cells_[d];
  }
}

std::array<int, 3> SpatialGrid::coords(std::size_t cell) const {
  std::array<int, 3> ijk{};
  ijk[0] = static_cast<int>(cell % cells_[0]);
  cell /= cells_[0];
  ijk[1] = static_cast<int>(cell % cells_[1]);
  ijk[2] = static_cast<int>(cell / cells_[1]);
  return ijk;
}

Vec3 SpatialGrid::center(std::size_t cell) const {
  const auto ijk = coords(cell);
  Vec3 x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) x[d] = (ijk[d] + 0.5) * width(d);
  return x;
}

double SpatialGrid::wrap(int axis, double x) const {
  const double L = extent_[axis];
  double r = std::fmod(x, L);
  if (r < 0.0) r += L;
  if (r >= L) r -= L;
  return r;
}

VelocityGrid::VelocityGrid(std::vector<double> speeds, std::vector<double> radial_weights,
                           std::vector<Vec3> directions, std::vector<double> angular_weights,
                           std::vector<std::size_t> antipodes, double s_max,
                           std::size_t polar_count)
    : speeds_(std::move(speeds)),
      radial_weights_(std::move(radial_weights)),
      directions_(std::move(directions)),
      angular_weights_(std::move(angular_weights)),
      antipodes_(std::move(antipodes)),
      s_max_(s_max),
      polar_count_(polar_count) {}

Vec3 VelocityGrid::velocity(std::size_t shell, std::size_t angle) const {
  const double s = speeds_[shell];
  const Vec3& u = directions_[angle];
  return {s * u[0], s * u[1], s * u[2]};
}

double VelocityGrid::ball_volume() const {
  return compensated_sum(radial_weights_) * compensated_sum(angular_weights_);
}

VelocityGrid VelocityGrid::rotated(const Mat3& rotation) const {
  std::vector<Vec3> dirs(directions_.size());
  for (std::size_t a = 0; a < directions_.size(); ++a) {
    for (int r = 0; r < 3; ++r) dirs[a][r] = dot(rotation[r], directions_[a]);
  }
  return VelocityGrid(speeds_, radial_weights_, std::move(dirs), angular_weights_, antipodes_,
                      s_max_, polar_count_);
}

GaussRule gauss_legendre(std::size_t n) {
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Root i counted from the top, refined by Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    if (n % 2 == 1 && i == half - 1) x = 0.0;
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  return rule;
}

VelocityGrid build_velocity_grid(std::size_t shells, std::size_t angles, double s_max,
                                 std::size_t polar_nodes) {
  if (shells == 0) throw DomainError("velocity grid needs at least one speed shell");
  if (angles < 2) throw DomainError("velocity grid needs at least two angular nodes");
  if (!(s_max > 0.0) || !std::isfinite(s_max)) throw DomainError("s_max must be positive");

  const std::size_t P = polar_nodes != 0 ? polar_nodes : (angles == 2 ? 1 : 2);
  if (angles % P != 0 || (angles / P) % 2 != 0) {
    std::ostringstream msg;
    msg << "angle count " << angles << " admits no symmetric product rule with " << P
        << " polar nodes (need A = P * Q with Q even)";
    throw DomainError(msg.str());
  }
  const std::size_t Q = angles / P;

  const double ds = s_max / static_cast<double>(shells);
  std::vector<double> speeds(shells);
  std::vector<double> rho(shells);
  for (std::size_t i = 0; i < shells; ++i) {
    speeds[i] = (static_cast<double>(i) + 0.5) * ds;
    rho[i] = speeds[i] * speeds[i] * ds;
  }

  const GaussRule gl = gauss_legendre(P);
  std::vector<Vec3> dirs(angles);
  std::vector<double> w(angles);
  std::vector<std::size_t> anti(angles);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(Q);
  std::vector<double> cphi(Q);
  std::vector<double> sphi(Q);
  for (std::size_t q = 0; q < Q / 2; ++q) {
    const double phi = (static_cast<double>(q) + 0.5) * dphi;
    cphi[q] = std::cos(phi);
    sphi[q] = std::sin(phi);
    cphi[q + Q / 2] = -cphi[q];
    sphi[q + Q / 2] = -sphi[q];
  }
  for (std::size_t p = 0; p < P; ++p) {
    const double mu = gl.nodes[p];
    const double st = std::sqrt(1.0 - mu * mu);
    for (std::size_t q = 0; q < Q; ++q) {
      const std::size_t a = p * Q + q;
      dirs[a] = {st * cphi[q], st * sphi[q], mu};
      w[a] = gl.weights[p] * dphi;
      anti[a] = (P - 1 - p) * Q + (q + Q / 2) % Q;
    }
  }
  return VelocityGrid(std::move(speeds), std::move(rho), std::move(dirs), std::move(w),
                      std::move(anti), s_max, P);
}

PhaseField::PhaseField(PhaseGridPtr grid, double time)
    : grid_(std::move(grid)), values_(grid_->size(), 0.0), time_(time) {}

PhaseField::PhaseField(PhaseGridPtr grid, std::vector<double> values, double time)
    : grid_(std::move(grid)), values_(std::move(values)), time_(time) {
  if (values_.size() != grid_->size()) {
    throw GridMismatch("phase field has " + std::to_string(values_.size()) +
                       " values, grid has " + std::to_string(grid_->size()) + " nodes");
  }
}

double PhaseField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

DistributionField::DistributionField(PhaseGridPtr grid, double time)
    : PhaseField(std::move(grid), time) {}

DistributionField::DistributionField(PhaseGridPtr grid, std::vector<double> values, double time)
    : PhaseField(std::move(grid), std::move(values), time) {
  validate();
}

DistributionField DistributionField::sample(
    PhaseGridPtr grid, const std::function<double(const Vec3&, const Vec3&)>& f, double time) {
  const auto& sg = grid->spatial();
  const auto& vg = grid->velocity();
  std::vector<double> values(grid->size());
  for (std::size_t c = 0; c < sg.cell_count(); ++c) {
    const Vec3 x = sg.center(c);
    for (std::size_t i = 0; i < vg.shell_count(); ++i) {
      for (std::size_t a = 0; a < vg.angle_count(); ++a) {
        values[grid->index(c, i, a)] = f(x, vg.velocity(i, a));
      }
    }
  }
  return DistributionField(std::move(grid), std::move(values), time);
}

void DistributionField::validate() const {
  const std::size_t S = grid_->velocity().shell_count();
  const std::size_t A = grid_->velocity().angle_count();
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double v = values_[k];
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream msg;
      msg << "distribution value " << v << " at node (cell " << k / (S * A) << ", shell "
          << (k / A) % S << ", angle " << k % A << ") is " << (std::isfinite(v) ? "negative" : "not finite");
      throw InvalidValue(msg.str());
    }
  }
}

bool same_grid(const PhaseGrid& a, const PhaseGrid& b) { return &a == &b || a == b; }

void require_same_grid(const PhaseGrid& a, const PhaseGrid& b, const char* what) {
  if (!same_grid(a, b)) throw GridMismatch(std::string(what) + ": phase grids differ");
}

namespace {

double integrate(const PhaseField& f, const std::function<double(std::size_t, std::size_t, std::size_t)>& weight) {
  const auto& g = f.grid();
  const std::size_t S = g.velocity().shell_count();
  const std::size_t A = g.velocity().angle_count();
  const auto values = f.values();
  CompensatedSum sum;
  for (std::size_t c = 0; c < g.spatial().cell_count(); ++c) {
    for (std::size_t i = 0; i < S; ++i) {
      for (std::size_t a = 0; a < A; ++a) {
        const double w = weight(c, i, a);
        if (!std::isfinite(w)) {
          std::ostringstream msg;
          msg << "weight is not finite at node (cell " << c << ", shell " << i << ", angle " << a << ")";
          throw InvalidValue(msg.str());
        }
        sum.add(w * values[g.index(c, i, a)] * g.node_measure(i, a));
      }
    }
  }
  return sum.value();
}

}  // namespace

double phase_integral(const PhaseField& f, const PhaseWeight& weight) {
  const auto& g = f.grid();
  Vec3 x{};
  std::size_t last_cell = static_cast<std::size_t>(-1);
  return integrate(f, [&](std::size_t c, std::size_t i, std::size_t a) {
    if (c != last_cell) {
      x = g.spatial().center(c);
      last_cell = c;
    }
    return weight(x, g.velocity().velocity(i, a));
  });
}

double phase_integral_velocity(const PhaseField& f, const std::function<double(const Vec3&)>& weight) {
  const auto& vg = f.grid().velocity();
  const std::size_t A = vg.angle_count();
  std::vector<double> table(vg.shell_count() * A);
  for (std::size_t i = 0; i < vg.shell_count(); ++i) {
    for (std::size_t a = 0; a < A; ++a) table[i * A + a] = weight(vg.velocity(i, a));
  }
  return integrate(f, [&](std::size_t, std::size_t i, std::size_t a) { return table[i * A + a]; });
}

}  // namespace kinetic
