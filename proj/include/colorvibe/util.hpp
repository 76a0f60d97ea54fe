#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace colorvibe {

/// Fixed formatting for all human-facing numeric output: 6 significant
/// digits, shortest form ("%.6g").
std::string fmt_g6(double v);

std::uint64_t fnv1a64(std::string_view data);

std::string read_file(const std::string& path);

/// Writes to a temp file in the target directory, then renames over the
/// destination; no partial outputs on failure.
void write_file_atomic(const std::string& path, std::string_view data);

}  // namespace colorvibe
