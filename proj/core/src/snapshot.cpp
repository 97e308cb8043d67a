#include "kinetic/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "kinetic/error.hpp"
#include "kinetic/format.hpp"

namespace kinetic {
namespace {

constexpr const char* kFormatTag = "kinetic-snapshot-1";

std::vector<unsigned char> encode_le(std::span<const double> values) {
  std::vector<unsigned char> bytes(values.size() * 8);
  for (std::size_t k = 0; k < values.size(); ++k) {
    auto bits = std::bit_cast<std::uint64_t>(values[k]);
    for (int b = 0; b < 8; ++b) {
      bytes[k * 8 + b] = static_cast<unsigned char>(bits & 0xffU);
      bits >>= 8;
    }
  }
  return bytes;
}

std::vector<double> decode_le(const std::vector<unsigned char>& bytes) {
  std::vector<double> values(bytes.size() / 8);
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[k * 8 + b];
    values[k] = std::bit_cast<double>(bits);
  }
  return values;
}

std::map<std::string, std::string> parse_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw KineticError("cannot open snapshot header " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw KineticError(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

const std::string& field(const std::map<std::string, std::string>& kv, const std::string& key,
                         const std::filesystem::path& path) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw KineticError(path.string() + ": missing header key '" + key + "'");
  return it->second;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, std::size_t n, const std::string& key) {
  std::istringstream in(text);
  std::vector<T> out(n);
  for (auto& v : out) {
    if (!(in >> v)) throw KineticError("snapshot header key '" + key + "' is malformed");
  }
  return out;
}

struct Header {
  PhaseGridPtr grid;
  double time = 0.0;
  std::size_t count = 0;
  std::string checksum;
};

Header load_header(const std::filesystem::path& path) {
  const auto kv = parse_header(path);
  if (field(kv, "format", path) != kFormatTag) {
    throw KineticError(path.string() + ": unsupported snapshot format");
  }
  const int dim = parse_list<int>(field(kv, "dim", path), 1, "dim")[0];
  const auto cells = parse_list<int>(field(kv, "cells", path), 3, "cells");
  const auto extent = parse_list<double>(field(kv, "extent", path), 3, "extent");
  const auto shells = parse_list<std::size_t>(field(kv, "shells", path), 1, "shells")[0];
  const auto angles = parse_list<std::size_t>(field(kv, "angles", path), 1, "angles")[0];
  const auto polar = parse_list<std::size_t>(field(kv, "polar_nodes", path), 1, "polar_nodes")[0];
  const double s_max = std::stod(field(kv, "s_max", path));
  Header h;
  h.grid = make_phase_grid(SpatialGrid(dim, {extent[0], extent[1], extent[2]}, {cells[0], cells[1], cells[2]}),
                           build_velocity_grid(shells, angles, s_max, polar));
  h.time = std::stod(field(kv, "time_tag", path));
  h.count = parse_list<std::size_t>(field(kv, "values", path), 1, "values")[0];
  h.checksum = field(kv, "checksum", path);
  return h;
}

}  // namespace

SnapshotPaths snapshot_paths(const std::filesystem::path& stem) {
  auto data = stem;
  auto header = stem;
  data += ".bin";
  header += ".hdr";
  return {data, header};
}

std::string write_snapshot(const DistributionField& f, const std::filesystem::path& stem) {
  const auto paths = snapshot_paths(stem);
  const auto bytes = encode_le(f.values());
  const std::string checksum = "fnv1a64:" + hex64(fnv1a64(bytes));
  {
    std::ofstream out(paths.data, std::ios::binary);
    if (!out) throw KineticError("cannot write " + paths.data.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  const auto& sg = f.grid().spatial();
  const auto& vg = f.grid().velocity();
  std::ofstream out(paths.header);
  if (!out) throw KineticError("cannot write " + paths.header.string());
  out << "format = " << kFormatTag << "\n"
      << "dim = " << sg.dim() << "\n"
      << "cells = " << sg.cells(0) << ' ' << sg.cells(1) << ' ' << sg.cells(2) << "\n"
      << "extent = " << format_double(sg.extent(0)) << ' ' << format_double(sg.extent(1)) << ' '
      << format_double(sg.extent(2)) << "\n"
      << "shells = " << vg.shell_count() << "\n"
      << "angles = " << vg.angle_count() << "\n"
      << "polar_nodes = " << vg.polar_count() << "\n"
      << "s_max = " << format_double(vg.s_max()) << "\n"
      << "time_tag = " << format_double(f.time()) << "\n"
      << "values = " << f.values().size() << "\n"
      << "checksum = " << checksum << "\n";
  return checksum;
}

namespace {

DistributionField load_values(const std::filesystem::path& stem, const Header& h, PhaseGridPtr grid) {
  const auto paths = snapshot_paths(stem);
  std::ifstream in(paths.data, std::ios::binary);
  if (!in) throw KineticError("cannot open snapshot data " + paths.data.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() != h.count * 8) {
    throw KineticError(paths.data.string() + ": expected " + std::to_string(h.count * 8) + " bytes, found " +
                       std::to_string(bytes.size()));
  }
  const std::string checksum = "fnv1a64:" + hex64(fnv1a64(bytes));
  if (checksum != h.checksum) {
    throw KineticError(paths.data.string() + ": checksum mismatch (header " + h.checksum + ", data " + checksum + ")");
  }
  return DistributionField(std::move(grid), decode_le(bytes), h.time);
}

}  // namespace

DistributionField read_snapshot(const std::filesystem::path& stem) {
  const Header h = load_header(snapshot_paths(stem).header);
  return load_values(stem, h, h.grid);
}

DistributionField read_snapshot(const std::filesystem::path& stem, PhaseGridPtr grid) {
  const Header h = load_header(snapshot_paths(stem).header);
  require_same_grid(*h.grid, *grid, "read_snapshot");
  return load_values(stem, h, std::move(grid));
}

}  // namespace kinetic
