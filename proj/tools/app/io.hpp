#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "kinetic/dynamics.hpp"
#include "kinetic/kernel.hpp"

namespace kinetic::app {

/// CSV writer: every row starts with the config checksum column, floats
/// are written as shortest round-trip decimals.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string checksum, const std::vector<std::string>& columns);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(const std::string& v);
  CsvWriter& operator<<(const char* v) { return *this << std::string(v); }
  CsvWriter& operator<<(std::size_t v);
  CsvWriter& operator<<(int v) { return *this << static_cast<std::size_t>(v); }
  void end_row();

 private:
  void begin_cell();

  std::ofstream out_;
  std::string checksum_;
  bool row_open_ = false;
};

/// Metadata stored next to a trajectory's snapshots.
struct TrajectoryInfo {
  std::string solver;
  double horizon = 0.0;
  std::size_t steps = 0;
  std::string profile;
  double kappa = 0.0;
  double lambda = 0.0;
  std::string damping_kind;
  double damping_c = 0.0;
  double moment_order = 0.0;
  std::string config_checksum;
};

/// Writes node_NNNN.{bin,hdr} for every node plus trajectory.txt. Returns
/// the snapshot checksums in node order.
std::vector<std::string> write_trajectory(const Trajectory& traj, const TrajectoryInfo& info,
                                          const std::filesystem::path& dir);

struct StoredTrajectory {
  TrajectoryInfo info;
  Trajectory trajectory;
  ScatteringKernel kernel;
  DampingModel damping;
};

/// Reads a directory written by write_trajectory and rebuilds its kernel
/// and damping model. Throws KineticError naming the missing or corrupt file.
StoredTrajectory read_trajectory(const std::filesystem::path& dir);

/// fnv1a64 of a file's bytes as 16 hex digits.
std::string file_checksum(const std::filesystem::path& path);

}  // namespace kinetic::app
