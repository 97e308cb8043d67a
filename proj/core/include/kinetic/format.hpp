#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace kinetic {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// FNV-1a 64-bit hash of a byte range.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a64(const std::string& text);

/// Hash rendered as 16 lowercase hex digits.
std::string hex64(std::uint64_t h);

}  // namespace kinetic
