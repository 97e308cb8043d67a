#include "kinetic/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kinetic/error.hpp"
#include "kinetic/moments.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/summation.hpp"

namespace kinetic {
namespace {

double require_rate(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("damping coefficient must be finite and nonnegative");
  return c;
}

int positive_mod(long long v, int n) {
  const long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

DampingModel DampingModel::constant(double c) { return {Kind::constant, require_rate(c)}; }
DampingModel DampingModel::linear(double c) { return {Kind::linear, require_rate(c)}; }
DampingModel DampingModel::saturating(double c) { return {Kind::saturating, require_rate(c)}; }

double DampingModel::rate(double n) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::constant:
      return c;
    case Kind::linear:
      return c * n;
    case Kind::saturating:
      return c * n / (1.0 + n);
  }
  return 0.0;
}

double DampingModel::lipschitz_constant() const {
  switch (kind) {
    case Kind::zero:
    case Kind::constant:
      return 0.0;
    case Kind::linear:
    case Kind::saturating:
      return c;
  }
  return 0.0;
}

std::string DampingModel::name() const {
  std::ostringstream s;
  switch (kind) {
    case Kind::zero:
      return "zero";
    case Kind::constant:
      s << "constant(" << c << ")";
      break;
    case Kind::linear:
      s << "linear(" << c << ")";
      break;
    case Kind::saturating:
      s << "saturating(" << c << ")";
      break;
  }
  return s.str();
}

double DampingModel::evolve_density(double n0, double t) const {
  if (!(n0 >= 0.0)) throw DomainError("density must be nonnegative");
  if (n0 == 0.0 || c == 0.0 || kind == Kind::zero) return n0;
  switch (kind) {
    case Kind::zero:
      return n0;
    case Kind::constant:
      return n0 * std::exp(-c * t);
    case Kind::linear:
      return n0 / (1.0 + c * n0 * t);
    case Kind::saturating: {
      // ln(n / n0) - 1/n + 1/n0 = -c t, solved for y = ln n. F is increasing
      // and concave in y, so Newton from y = ln n0 converges monotonically.
      const double target = std::log(n0) - 1.0 / n0 - c * t;
      double y = std::log(n0);
      for (int it = 0; it < 200; ++it) {
        const double F = y - std::exp(-y) - target;
        const double step = F / (1.0 + std::exp(-y));
        y -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(y))) break;
      }
      return std::exp(y);
    }
  }
  return n0;
}

Vec3 trace_characteristic(const SpatialGrid& grid, const Vec3& x, const Vec3& xi, double dt) {
  Vec3 out = x;
  for (int d = 0; d < grid.dim(); ++d) out[d] = grid.wrap(d, x[d] + dt * xi[d]);
  return out;
}

PeriodicShift::PeriodicShift(const SpatialGrid& grid, const Vec3& displacement) : grid_(&grid) {
  for (int d = 0; d < grid.dim(); ++d) {
    double s = displacement[d] / grid.width(d);
    const double nearest = std::round(s);
    if (std::abs(s - nearest) <= 1e-10 * std::max(1.0, std::abs(s))) s = nearest;
    const double whole = std::floor(s);
    axes_[d].frac = s - whole;
    axes_[d].offset = positive_mod(static_cast<long long>(whole), grid.cells(d));
  }
}

bool PeriodicShift::grid_aligned() const {
  for (int d = 0; d < grid_->dim(); ++d) {
    if (axes_[d].frac != 0.0) return false;
  }
  return true;
}

void PeriodicShift::apply_axis(int d, std::span<const double> in, std::span<double> out) const {
  const SpatialGrid& g = *grid_;
  const std::size_t n = g.cell_count();
  const int N = g.cells(d);
  std::size_t stride = 1;
  for (int e = 0; e < d; ++e) stride *= static_cast<std::size_t>(g.cells(e));
  const std::size_t line_span = stride * static_cast<std::size_t>(N);
  const int k = axes_[d].offset;
  const double th = axes_[d].frac;
  const double keep = 1.0 - th;
  for (std::size_t outer = 0; outer < n; outer += line_span) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = outer + inner;
      for (int i = 0; i < N; ++i) {
        int j0 = i - k;
        if (j0 < 0) j0 += N;
        const double v0 = in[base + static_cast<std::size_t>(j0) * stride];
        double v = v0;
        if (th != 0.0) {
          const int j1 = j0 == 0 ? N - 1 : j0 - 1;
          v = keep * v0 + th * in[base + static_cast<std::size_t>(j1) * stride];
        }
        out[base + static_cast<std::size_t>(i) * stride] = v;
      }
    }
  }
}

void PeriodicShift::apply(std::span<const double> src, std::span<double> dst) const {
  const int D = grid_->dim();
  if (D == 1) {
    apply_axis(0, src, dst);
    return;
  }
  thread_local std::vector<double> first;
  thread_local std::vector<double> second;
  first.resize(grid_->cell_count());
  apply_axis(0, src, first);
  if (D == 2) {
    apply_axis(1, first, dst);
    return;
  }
  second.resize(grid_->cell_count());
  apply_axis(1, first, second);
  apply_axis(2, second, dst);
}

double PeriodicShift::sample(std::span<const double> src, std::size_t cell) const {
  const SpatialGrid& g = *grid_;
  const auto ijk = g.coords(cell);
  double total = 0.0;
  const int corners = 1 << g.dim();
  for (int corner = 0; corner < corners; ++corner) {
    std::array<int, 3> at{0, 0, 0};
    double w = 1.0;
    for (int d = 0; d < g.dim(); ++d) {
      const bool far = (corner >> d) & 1;
      int j = ijk[d] - axes_[d].offset - (far ? 1 : 0);
      j = positive_mod(j, g.cells(d));
      at[d] = j;
      w *= far ? axes_[d].frac : 1.0 - axes_[d].frac;
    }
    if (w != 0.0) total += w * src[g.index(at)];
  }
  return total;
}

DistributionField advect(const DistributionField& f, double dt) {
  const auto& g = f.grid();
  const auto& vg = g.velocity();
  const std::size_t cells = g.spatial().cell_count();
  const std::size_t nodes = g.velocity_nodes();
  DistributionField out(f.grid_ptr(), f.time() + dt);
  const auto src = f.values();
  auto dst = out.values();
  parallel_for(nodes, [&](std::size_t node) {
    const std::size_t i = node / vg.angle_count();
    const std::size_t a = node % vg.angle_count();
    const Vec3 xi = vg.velocity(i, a);
    const PeriodicShift shift(g.spatial(), {dt * xi[0], dt * xi[1], dt * xi[2]});
    std::vector<double> slice(cells);
    std::vector<double> moved(cells);
    for (std::size_t c = 0; c < cells; ++c) slice[c] = src[c * nodes + node];
    shift.apply(slice, moved);
    for (std::size_t c = 0; c < cells; ++c) dst[c * nodes + node] = moved[c];
  });
  return out;
}

PhaseField damping_rate(const PhaseField& f, const DampingModel& mu) {
  const auto n = density(f);
  PhaseField out(f.grid_ptr(), f.time());
  const std::size_t nodes = f.grid().velocity_nodes();
  const auto src = f.values();
  auto dst = out.values();
  for (std::size_t c = 0; c < n.size(); ++c) {
    const double rate = mu.rate(n[c]);
    for (std::size_t k = 0; k < nodes; ++k) dst[c * nodes + k] = -rate * src[c * nodes + k];
  }
  return out;
}

double damping_power(const PhaseField& f, std::span<const double> n, const DampingModel& mu, double m) {
  const PhaseGrid& g = f.grid();
  if (n.size() != g.spatial().cell_count()) throw GridMismatch("damping_power: density has the wrong cell count");
  const auto& vg = g.velocity();
  const std::size_t S = vg.shell_count();
  const std::size_t A = vg.angle_count();
  std::vector<double> weight(S * A);
  for (std::size_t i = 0; i < S; ++i) {
    for (std::size_t a = 0; a < A; ++a) weight[i * A + a] = (1.0 + std::pow(vg.speeds()[i], m)) * g.node_measure(i, a);
  }
  const auto vals = f.values();
  CompensatedSum total;
  for (std::size_t c = 0; c < n.size(); ++c) {
    const double rate = mu.rate(n[c]);
    if (rate == 0.0) continue;
    for (std::size_t k = 0; k < weight.size(); ++k) total.add(rate * weight[k] * vals[c * weight.size() + k]);
  }
  return total.value();
}

Trajectory::Trajectory(double horizon, std::size_t steps, std::vector<DistributionField> fields)
    : horizon_(horizon), steps_(steps), fields_(std::move(fields)) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("trajectory horizon must be positive");
  if (steps == 0) throw DomainError("trajectory needs at least one step");
  if (fields_.size() != steps + 1) throw DomainError("trajectory needs one field per time node");
  for (const auto& f : fields_) require_same_grid(f.grid(), fields_.front().grid(), "Trajectory");
}

std::vector<double> scattering_propagator(const ScatteringKernel& kernel, double tau) {
  const std::size_t A = kernel.size();
  const double scale = kernel.lambda() * tau;
  const auto P = kernel.gain_matrix();
  std::vector<double> M(A * A);
  double norm = 0.0;
  for (std::size_t a = 0; a < A; ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < A; ++b) {
      M[a * A + b] = scale * P[a * A + b];
      row += M[a * A + b];
    }
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const double shrink = std::ldexp(1.0, -squarings);
  for (double& v : M) v *= shrink;

  auto multiply = [A](const std::vector<double>& X, const std::vector<double>& Y) {
    std::vector<double> Z(A * A, 0.0);
    for (std::size_t a = 0; a < A; ++a) {
      for (std::size_t k = 0; k < A; ++k) {
        const double x = X[a * A + k];
        if (x == 0.0) continue;
        for (std::size_t b = 0; b < A; ++b) Z[a * A + b] += x * Y[k * A + b];
      }
    }
    return Z;
  };

  // exp(M) by Taylor; every term is a nonnegative matrix.
  std::vector<double> E(A * A, 0.0);
  for (std::size_t a = 0; a < A; ++a) E[a * A + a] = 1.0;
  std::vector<double> term = E;
  for (int k = 1; k < 60; ++k) {
    term = multiply(term, M);
    const double inv = 1.0 / k;
    double largest = 0.0;
    for (std::size_t q = 0; q < term.size(); ++q) {
      term[q] *= inv;
      E[q] += term[q];
      largest = std::max(largest, term[q]);
    }
    if (largest < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) E = multiply(E, E);
  const double decay = std::exp(-scale);
  for (double& v : E) v *= decay;
  return E;
}

DistributionField local_flow(const DistributionField& f, const DampingModel& mu, double tau,
                             std::span<const double> propagator) {
  const auto& g = f.grid();
  const std::size_t S = g.velocity().shell_count();
  const std::size_t A = g.velocity().angle_count();
  const auto n = density(f);
  DistributionField out(f.grid_ptr(), f.time() + tau);
  const auto src = f.values();
  auto dst = out.values();
  parallel_for(g.spatial().cell_count(), [&](std::size_t c) {
    // Scattering keeps n fixed, so the damping factor exp(-int mu(n) ds) is n(tau)/n(0).
    const double factor = n[c] > 0.0 ? mu.evolve_density(n[c], tau) / n[c] : 1.0;
    for (std::size_t i = 0; i < S; ++i) {
      const std::size_t base = g.index(c, i, 0);
      for (std::size_t a = 0; a < A; ++a) {
        double acc = 0.0;
        const double* row = propagator.data() + a * A;
        for (std::size_t b = 0; b < A; ++b) acc += row[b] * src[base + b];
        dst[base + a] = factor * acc;
      }
    }
  });
  return out;
}

Trajectory run_splitting(const DistributionField& f0, const ScatteringKernel& kernel, const DampingModel& mu,
                         double horizon, std::size_t steps) {
  if (steps == 0) throw DomainError("run_splitting needs at least one step");
  if (!(horizon > 0.0)) throw DomainError("run_splitting horizon must be positive");
  if (!(f0.grid().velocity() == kernel.grid())) throw GridMismatch("run_splitting: field and kernel velocity grids differ");
  const double dt = horizon / static_cast<double>(steps);
  if (kernel.lambda() * dt > 1.0) {
    std::ostringstream msg;
    msg << "positivity constraint lambda*dt <= 1 violated: lambda*dt = " << kernel.lambda() * dt;
    throw DomainError(msg.str());
  }
  const auto n0 = density(f0);
  const double n_max = n0.empty() ? 0.0 : *std::max_element(n0.begin(), n0.end());
  if (mu.rate(n_max) * dt > 1.0) {
    std::ostringstream msg;
    msg << "positivity constraint max mu(n)*dt <= 1 violated: mu(n_max)*dt = " << mu.rate(n_max) * dt;
    throw DomainError(msg.str());
  }
  const auto half = scattering_propagator(kernel, 0.5 * dt);
  std::vector<DistributionField> fields;
  fields.reserve(steps + 1);
  fields.push_back(f0);
  fields.back().set_time(0.0);
  for (std::size_t j = 0; j < steps; ++j) {
    DistributionField f = local_flow(fields.back(), mu, 0.5 * dt, half);
    f = advect(f, dt);
    f = local_flow(f, mu, 0.5 * dt, half);
    f.set_time(static_cast<double>(j + 1) * dt);
    fields.push_back(std::move(f));
  }
  return Trajectory(horizon, steps, std::move(fields));
}

}  // namespace kinetic
