#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "kinetic/dynamics.hpp"
#include "kinetic/kernel.hpp"

namespace kinetic::app {

/// One named pass/fail check as reported by every command.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

bool all_pass(const std::vector<Check>& checks);

/// max_j |a(t_j) - b(t_j)|_1 / |a(t_j)|_1 over shared nodes.
double relative_l1_gap(const Trajectory& a, const Trajectory& b);

/// Max over nodes of the relative deviation of the mean density from the
/// exact n(t) of a spatially homogeneous solution. NaN if f0 is not
/// spatially homogeneous.
double homogeneous_density_error(const Trajectory& traj, const DampingModel& mu);

int cmd_run(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

/// Replaces the kernel before it is checked; lets tests inject a defect.
using KernelHook = std::function<ScatteringKernel(const ScatteringKernel&)>;

struct KernelReport {
  std::vector<Check> checks;
  std::vector<std::array<double, 2>> h_table;  ///< (s, H(s))
};

KernelReport kernel_report(const RunConfig& cfg, const KernelHook& hook = {});
int cmd_verify_kernel(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log,
                      const KernelHook& hook = {});

struct LevelMetrics {
  int level = 0;
  std::array<int, 3> cells{};
  std::size_t steps = 0;
  std::map<std::string, double> values;
  std::size_t gronwall_violations = 0;  ///< of the full nonlinear Picard run
};

struct OrderRow {
  std::string metric;
  int coarse = 0;
  int fine = 0;
  double order = 0.0;  ///< NaN when both values are at round-off
};

struct ConvergenceStudy {
  std::vector<LevelMetrics> levels;  ///< coarse to fine
  std::vector<OrderRow> orders;
  std::vector<Check> checks;
};

/// Joint (dx, dt) refinement: level `levels - 1` is the configured
/// resolution, each coarser level halves cells and steps. Throws
/// ConfigError for fewer than 2 levels or when memory would not suffice.
ConvergenceStudy convergence_study(const RunConfig& cfg, int levels, std::ostream* log = nullptr);
int cmd_convergence(const RunConfig& cfg, int levels, const std::filesystem::path& out, std::ostream& log);

int cmd_energy_report(const std::filesystem::path& dir, const std::filesystem::path& out, std::ostream& log);
int cmd_weak_form(const std::filesystem::path& dir, const std::filesystem::path& out, std::ostream& log);

}  // namespace kinetic::app
