#include "kinetic/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kinetic/error.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/summation.hpp"

namespace kinetic {

AngularProfile AngularProfile::isotropic() {
  return {Kind::isotropic, 0.0, "isotropic", [](double) { return 1.0; }};
}

AngularProfile AngularProfile::forward_peaked(double kappa) {
  if (!std::isfinite(kappa)) throw DomainError("forward_peaked kappa must be finite");
  std::ostringstream name;
  name << "forward_peaked(" << kappa << ")";
  return {Kind::forward_peaked, kappa, name.str(), [kappa](double c) { return std::exp(kappa * c); }};
}

AngularProfile AngularProfile::custom(std::string name, std::function<double(double)> g) {
  return {Kind::custom, 0.0, std::move(name), std::move(g)};
}

ScatteringKernel::ScatteringKernel(std::shared_ptr<const VelocityGrid> grid, std::vector<double> matrix,
                                   double lambda)
    : grid_(std::move(grid)), matrix_(std::move(matrix)), lambda_(lambda) {
  const std::size_t A = grid_->angle_count();
  if (matrix_.size() != A * A) throw GridMismatch("kernel matrix size does not match the angular grid");
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) throw DomainError("break-up frequency lambda must be nonnegative");
  const auto w = grid_->angular_weights();
  gain_.resize(A * A);
  for (std::size_t a = 0; a < A; ++a) {
    for (std::size_t b = 0; b < A; ++b) {
      const double g = matrix_[a * A + b];
      if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidValue("kernel entries must be finite and nonnegative");
      gain_[a * A + b] = w[b] * g;
    }
  }
}

void ScatteringKernel::apply_gain(std::span<const double> in, std::span<double> out) const {
  const std::size_t A = size();
  for (std::size_t a = 0; a < A; ++a) {
    const double* row = gain_.data() + a * A;
    double acc = 0.0;
    for (std::size_t b = 0; b < A; ++b) acc += row[b] * in[b];
    out[a] = acc;
  }
}

ScatteringKernel build_kernel(const AngularProfile& profile, std::shared_ptr<const VelocityGrid> grid,
                              double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("break-up frequency lambda must be nonnegative");
  if (!profile.g) throw DomainError("angular profile has no function");
  const std::size_t A = grid->angle_count();
  const auto w = grid->angular_weights();
  std::vector<double> raw(A * A);
  for (std::size_t a = 0; a < A; ++a) {
    for (std::size_t b = 0; b < A; ++b) {
      const double c = std::clamp(dot(grid->direction(a), grid->direction(b)), -1.0, 1.0);
      const double g = profile.g(c);
      if (!(g >= 0.0) || !std::isfinite(g)) {
        std::ostringstream msg;
        msg << "angular profile " << profile.name << " is negative or not finite at c = " << c;
        throw DomainError(msg.str());
      }
      raw[a * A + b] = g;
    }
  }
  for (std::size_t b = 0; b < A; ++b) {
    CompensatedSum z;
    for (std::size_t a = 0; a < A; ++a) z.add(w[a] * raw[a * A + b]);
    const double norm = z.value();
    if (!(norm > 0.0)) {
      throw DomainError("kernel column " + std::to_string(b) + " has zero normalization: profile " + profile.name +
                        " vanishes on every node reachable from it");
    }
    for (std::size_t a = 0; a < A; ++a) raw[a * A + b] /= norm;
  }
  return ScatteringKernel(std::move(grid), std::move(raw), lambda);
}

double self_similar_H(double speed) {
  if (!(speed > 0.0)) throw DomainError("self_similar_H requires a positive speed");
  return 1.0 / (speed * speed * speed);
}

double reverse_mass_bound(const ScatteringKernel& kernel) {
  const std::size_t A = kernel.size();
  const auto P = kernel.gain_matrix();
  double worst = 0.0;
  for (std::size_t a = 0; a < A; ++a) {
    CompensatedSum s;
    for (std::size_t b = 0; b < A; ++b) s.add(P[a * A + b]);
    worst = std::max(worst, s.value());
  }
  return worst;
}

double normalization_defect(const ScatteringKernel& kernel) {
  const std::size_t A = kernel.size();
  const auto w = kernel.grid().angular_weights();
  double worst = 0.0;
  for (std::size_t b = 0; b < A; ++b) {
    CompensatedSum s;
    for (std::size_t a = 0; a < A; ++a) s.add(w[a] * kernel(a, b));
    worst = std::max(worst, std::abs(s.value() - 1.0));
  }
  return worst;
}

Mat3 rotation_from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0)) throw DomainError("zero quaternion");
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  return Mat3{Vec3{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
              Vec3{2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
              Vec3{2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
}

double rotation_invariance_residual(const AngularProfile& profile, const std::shared_ptr<const VelocityGrid>& grid,
                                    double lambda, const Mat3& rotation) {
  const double base = reverse_mass_bound(build_kernel(profile, grid, lambda));
  auto rotated = std::make_shared<const VelocityGrid>(grid->rotated(rotation));
  const double turned = reverse_mass_bound(build_kernel(profile, rotated, lambda));
  return std::abs(turned - base);
}

namespace {

void require_kernel_grid(const PhaseGrid& g, const ScatteringKernel& kernel) {
  if (!(g.velocity() == kernel.grid())) throw GridMismatch("apply_Q2: field and kernel velocity grids differ");
}

}  // namespace

PhaseField apply_Q2(const PhaseField& f, const ScatteringKernel& kernel) {
  const auto& g = f.grid();
  require_kernel_grid(g, kernel);
  const std::size_t S = g.velocity().shell_count();
  const std::size_t A = g.velocity().angle_count();
  const double lambda = kernel.lambda();
  PhaseField out(f.grid_ptr(), f.time());
  const auto in = f.values();
  auto dst = out.values();
  parallel_for(g.spatial().cell_count(), [&](std::size_t c) {
    std::vector<double> gain(A);
    for (std::size_t i = 0; i < S; ++i) {
      const std::size_t base = g.index(c, i, 0);
      kernel.apply_gain(in.subspan(base, A), gain);
      for (std::size_t a = 0; a < A; ++a) dst[base + a] = lambda * (gain[a] - in[base + a]);
    }
  });
  return out;
}

double collision_invariant_defect(const PhaseField& f, const ScatteringKernel& kernel, double m) {
  if (!(m >= 0.0)) throw DomainError("moment order must be nonnegative");
  const PhaseField q = apply_Q2(f, kernel);
  return std::abs(phase_integral_velocity(q, [m](const Vec3& xi) { return 1.0 + std::pow(std::sqrt(dot(xi, xi)), m); }));
}

}  // namespace kinetic
