#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "config.hpp"
#include "kinetic/grid.hpp"
#include "kinetic/kernel.hpp"

namespace kinetic::app {

using InitialFunction = std::function<double(const Vec3& x, const Vec3& xi)>;

/// Closed-form initial data of the analytic generators; nullopt for
/// from-snapshot. Periodic in x, so it also gives the exact free-transport
/// solution f0(x - t xi).
std::optional<InitialFunction> initial_function(const RunConfig& cfg);

struct Scenario {
  std::shared_ptr<const VelocityGrid> velocity;
  PhaseGridPtr grid;
  ScatteringKernel kernel;
  DampingModel damping;
  DistributionField initial;
};

/// Builds grid, kernel, damping and (mollified) initial data.
Scenario build_scenario(const RunConfig& cfg);

/// Same scenario with every active axis and the time step count divided by
/// `factor`. Throws ConfigError when a count is not divisible or drops
/// below the minimum.
RunConfig coarsened(const RunConfig& cfg, int factor);

/// Rough peak memory of a Picard + splitting run, in bytes.
double estimated_run_bytes(const RunConfig& cfg);

/// Bytes the process may use: MemAvailable from /proc/meminfo, or 4 GiB
/// when that is unavailable.
double available_memory_bytes();

}  // namespace kinetic::app
