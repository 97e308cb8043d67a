#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "kinetic/dynamics.hpp"
#include "kinetic/kernel.hpp"
#include "kinetic/picard.hpp"

namespace kinetic::app {

/// Raised for any problem in a run configuration. The message names the
/// offending field (or line and column for syntax errors).
class ConfigError : public KineticError {
 public:
  using KineticError::KineticError;
};

struct GridConfig {
  int dim = 1;
  std::array<int, 3> cells{64, 64, 64};  // inert axes are reset to one cell
  std::array<double, 3> extent{2.0, 2.0, 2.0};
  std::size_t shells = 6;
  std::size_t angles = 32;
  std::size_t polar_nodes = 0;
  double s_max = 2.0;
};

struct KernelConfig {
  std::string profile = "isotropic";  ///< isotropic | forward-peaked
  double kappa = 0.0;
  double lambda = 1.0;
};

struct DampingConfig {
  std::string kind = "linear";  ///< zero | constant | linear | saturating
  double c = 0.5;
};

struct InitialConfig {
  std::string generator = "gaussian-beam";  ///< gaussian-beam | two-stream | homogeneous-anisotropic | from-snapshot
  double background = 1.0;
  double amplitude = 0.5;
  double width = 0.3;  ///< spatial width, in box units
  std::array<double, 3> drift{0.5, 0.0, 0.0};
  double temperature = 0.36;
  double anisotropy = 0.5;
  std::string snapshot;  ///< stem, relative to the config file
  double mollify_eps = 0.0;
};

struct OutputConfig {
  std::string directory = "out";
  bool snapshots = true;
  bool moments = true;
  bool splitting = true;
};

struct RunConfig {
  GridConfig grid;
  KernelConfig kernel;
  DampingConfig damping;
  PicardConfig picard;
  InitialConfig initial;
  OutputConfig output;
  std::filesystem::path base_dir;  ///< directory of the config file

  /// Canonical JSON text of the parsed configuration.
  [[nodiscard]] std::string canonical() const;
  /// fnv1a64 of canonical(), as 16 hex digits.
  [[nodiscard]] std::string checksum() const;
};

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Cross-module validation: builds nothing, throws ConfigError.
void validate(const RunConfig& cfg);

DampingModel make_damping(const DampingConfig& cfg);
AngularProfile make_profile(const KernelConfig& cfg);

}  // namespace kinetic::app
