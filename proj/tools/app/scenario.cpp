#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kinetic/snapshot.hpp"
#include "kinetic/verify.hpp"

namespace kinetic::app {
namespace {

double maxwellian(const Vec3& xi, const Vec3& drift, double temperature) {
  Vec3 d{xi[0] - drift[0], xi[1] - drift[1], xi[2] - drift[2]};
  return std::exp(-dot(d, d) / (2.0 * temperature));
}

}  // namespace

std::optional<InitialFunction> initial_function(const RunConfig& cfg) {
  const InitialConfig ini = cfg.initial;
  const int dim = cfg.grid.dim;
  const auto L = cfg.grid.extent;
  const Vec3 drift{ini.drift[0], ini.drift[1], ini.drift[2]};

  if (ini.generator == "gaussian-beam") {
    // Periodic (von Mises) bump centered in the box; Gaussian for width << L.
    return [=](const Vec3& x, const Vec3& xi) {
      double bump = 1.0;
      for (int d = 0; d < dim; ++d) {
        const double k = 2.0 * std::numbers::pi / L[d];
        bump *= std::exp((std::cos(k * (x[d] - 0.5 * L[d])) - 1.0) / (k * k * ini.width * ini.width));
      }
      return (ini.background + ini.amplitude * bump) * maxwellian(xi, drift, ini.temperature);
    };
  }
  if (ini.generator == "two-stream") {
    if (ini.amplitude > 1.0) throw ConfigError("config field 'initial.amplitude': two-stream needs amplitude <= 1");
    const Vec3 back{-drift[0], -drift[1], -drift[2]};
    return [=](const Vec3& x, const Vec3& xi) {
      const double k = 2.0 * std::numbers::pi / L[0];
      return ini.background * (1.0 + ini.amplitude * std::cos(k * x[0])) * 0.5 *
             (maxwellian(xi, drift, ini.temperature) + maxwellian(xi, back, ini.temperature));
    };
  }
  if (ini.generator == "homogeneous-anisotropic") {
    return [=](const Vec3&, const Vec3& xi) {
      const double s = std::sqrt(dot(xi, xi));
      const double cos_x = s > 0.0 ? xi[0] / s : 0.0;
      return ini.background * (1.0 + ini.anisotropy * cos_x) * std::exp(-s * s / (2.0 * ini.temperature));
    };
  }
  return std::nullopt;
}

Scenario build_scenario(const RunConfig& cfg) {
  validate(cfg);
  const auto& g = cfg.grid;
  auto velocity = std::make_shared<const VelocityGrid>(build_velocity_grid(g.shells, g.angles, g.s_max, g.polar_nodes));
  auto grid = make_phase_grid(SpatialGrid(g.dim, g.extent, g.cells), *velocity);
  ScatteringKernel kernel = build_kernel(make_profile(cfg.kernel), velocity, cfg.kernel.lambda);

  DistributionField initial(grid);
  if (auto fn = initial_function(cfg)) {
    initial = DistributionField::sample(grid, *fn);
  } else {
    std::filesystem::path stem = cfg.initial.snapshot;
    if (stem.is_relative()) stem = cfg.base_dir / stem;
    try {
      initial = read_snapshot(stem, grid);
    } catch (const KineticError& e) {
      throw ConfigError(std::string("config field 'initial.snapshot': ") + e.what());
    }
  }
  if (cfg.initial.mollify_eps > 0.0) initial = mollify(initial, cfg.initial.mollify_eps);
  return Scenario{velocity, grid, std::move(kernel), make_damping(cfg.damping), std::move(initial)};
}

RunConfig coarsened(const RunConfig& cfg, int factor) {
  RunConfig out = cfg;
  if (factor == 1) return out;
  for (int d = 0; d < cfg.grid.dim; ++d) {
    if (cfg.grid.cells[d] % factor != 0 || cfg.grid.cells[d] / factor < 2) {
      std::ostringstream msg;
      msg << "cannot coarsen " << cfg.grid.cells[d] << " cells on axis " << d << " by " << factor
          << ": use a power-of-two cell count or fewer levels";
      throw ConfigError(msg.str());
    }
    out.grid.cells[d] = cfg.grid.cells[d] / factor;
  }
  if (cfg.picard.steps % static_cast<std::size_t>(factor) != 0) {
    std::ostringstream msg;
    msg << "cannot coarsen " << cfg.picard.steps << " time steps by " << factor;
    throw ConfigError(msg.str());
  }
  out.picard.steps = cfg.picard.steps / static_cast<std::size_t>(factor);
  return out;
}

double estimated_run_bytes(const RunConfig& cfg) {
  double cells = 1.0;
  for (int d = 0; d < cfg.grid.dim; ++d) cells *= cfg.grid.cells[d];
  const double field = cells * static_cast<double>(cfg.grid.shells * cfg.grid.angles) * sizeof(double);
  const double nodes = static_cast<double>(cfg.picard.steps + 1);
  // Picard keeps the previous and next iterates plus two slice-major work
  // arrays of the same size; splitting adds one more trajectory.
  return 5.0 * nodes * field;
}

double available_memory_bytes() {
  std::ifstream in("/proc/meminfo");
  std::string key;
  double value = 0.0;
  std::string unit;
  while (in >> key >> value >> unit) {
    if (key == "MemAvailable:") return value * 1024.0;
  }
  return 4.0 * 1024.0 * 1024.0 * 1024.0;
}

}  // namespace kinetic::app
