#pragma once

#include <filesystem>
#include <string>

#include "kinetic/grid.hpp"

namespace kinetic {

/// On-disk snapshot of one DistributionField.
///
/// `<stem>.bin` holds the values as little-endian IEEE-754 doubles in storage
/// order (cell-major, then shell, then angle; cells with axis 0 fastest).
/// `<stem>.hdr` is a `key = value` text sidecar:
///
///     format = kinetic-snapshot-1
///     dim = 1
///     cells = 64 1 1
///     extent = 1 1 1
///     shells = 6
///     angles = 32
///     polar_nodes = 2
///     s_max = 1
///     time_tag = 0.25
///     values = 12288
///     checksum = fnv1a64:<16 hex digits of the .bin bytes>
struct SnapshotPaths {
  std::filesystem::path data;
  std::filesystem::path header;
};

SnapshotPaths snapshot_paths(const std::filesystem::path& stem);

/// Writes both files; returns the checksum string recorded in the header.
std::string write_snapshot(const DistributionField& f, const std::filesystem::path& stem);

/// Reads a snapshot back, rebuilding its grid. Throws KineticError on a
/// malformed header, size mismatch or checksum mismatch.
DistributionField read_snapshot(const std::filesystem::path& stem);

/// Same, but the values are bound to an existing grid (which must match the header).
DistributionField read_snapshot(const std::filesystem::path& stem, PhaseGridPtr grid);

}  // namespace kinetic
