#include "io.hpp"

#include <cstdio>
#include <iterator>
#include <map>
#include <sstream>

#include "config.hpp"
#include "kinetic/format.hpp"
#include "kinetic/snapshot.hpp"

namespace kinetic::app {

CsvWriter::CsvWriter(const std::filesystem::path& path, std::string checksum, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), checksum_(std::move(checksum)) {
  if (!out_) throw KineticError("cannot write " + path.string());
  out_ << "config_checksum";
  for (const auto& c : columns) out_ << ',' << c;
  out_ << '\n';
}

void CsvWriter::begin_cell() {
  if (!row_open_) {
    out_ << checksum_;
    row_open_ = true;
  }
  out_ << ',';
}

CsvWriter& CsvWriter::operator<<(double v) {
  begin_cell();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
  begin_cell();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::size_t v) {
  begin_cell();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_open_ = false;
}

namespace {

std::string node_stem(std::size_t j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "node_%04zu", j);
  return buf;
}

double parse_number(const std::map<std::string, std::string>& kv, const std::string& key,
                    const std::filesystem::path& file) {
  auto it = kv.find(key);
  if (it == kv.end()) throw KineticError(file.string() + ": missing key '" + key + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw KineticError(file.string() + ": key '" + key + "' is not a number");
  }
}

std::string text(const std::map<std::string, std::string>& kv, const std::string& key,
                 const std::filesystem::path& file) {
  auto it = kv.find(key);
  if (it == kv.end()) throw KineticError(file.string() + ": missing key '" + key + "'");
  return it->second;
}

}  // namespace

std::vector<std::string> write_trajectory(const Trajectory& traj, const TrajectoryInfo& info,
                                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> sums;
  sums.reserve(traj.size());
  for (std::size_t j = 0; j < traj.size(); ++j) sums.push_back(write_snapshot(traj[j], dir / node_stem(j)));
  std::ofstream meta(dir / "trajectory.txt", std::ios::binary);
  meta << "format=kinetic-trajectory-1\n"
       << "solver=" << info.solver << '\n'
       << "horizon=" << format_double(info.horizon) << '\n'
       << "steps=" << info.steps << '\n'
       << "profile=" << info.profile << '\n'
       << "kappa=" << format_double(info.kappa) << '\n'
       << "lambda=" << format_double(info.lambda) << '\n'
       << "damping=" << info.damping_kind << '\n'
       << "damping_c=" << format_double(info.damping_c) << '\n'
       << "moment_order=" << format_double(info.moment_order) << '\n'
       << "config_checksum=" << info.config_checksum << '\n';
  if (!meta) throw KineticError("cannot write " + (dir / "trajectory.txt").string());
  return sums;
}

StoredTrajectory read_trajectory(const std::filesystem::path& dir) {
  const auto file = dir / "trajectory.txt";
  std::ifstream in(file);
  if (!in) throw KineticError("not a trajectory directory (no trajectory.txt): " + dir.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (text(kv, "format", file) != "kinetic-trajectory-1") throw KineticError(file.string() + ": unknown format");

  TrajectoryInfo info;
  info.solver = text(kv, "solver", file);
  info.horizon = parse_number(kv, "horizon", file);
  info.steps = static_cast<std::size_t>(parse_number(kv, "steps", file));
  info.profile = text(kv, "profile", file);
  info.kappa = parse_number(kv, "kappa", file);
  info.lambda = parse_number(kv, "lambda", file);
  info.damping_kind = text(kv, "damping", file);
  info.damping_c = parse_number(kv, "damping_c", file);
  info.moment_order = parse_number(kv, "moment_order", file);
  info.config_checksum = text(kv, "config_checksum", file);

  std::vector<DistributionField> fields;
  fields.reserve(info.steps + 1);
  fields.push_back(read_snapshot(dir / node_stem(0)));
  for (std::size_t j = 1; j <= info.steps; ++j) fields.push_back(read_snapshot(dir / node_stem(j), fields[0].grid_ptr()));
  Trajectory traj(info.horizon, info.steps, std::move(fields));

  auto velocity = std::make_shared<const VelocityGrid>(traj.grid().velocity());
  ScatteringKernel kernel = build_kernel(make_profile({info.profile, info.kappa, info.lambda}), velocity, info.lambda);
  DampingModel damping = make_damping({info.damping_kind, info.damping_c});
  return StoredTrajectory{std::move(info), std::move(traj), std::move(kernel), damping};
}

std::string file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KineticError("cannot read " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return hex64(fnv1a64(bytes));
}

}  // namespace kinetic::app
