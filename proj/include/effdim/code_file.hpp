#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "effdim/covercode.hpp"

namespace effdim {

/// Text form: a header line `covercode v1 n=<n> r=<r> seed=<seed> S=<S>`,
/// then one n-character '0'/'1' line per center in construction order.
std::string format_code(const CoveringCode& code);

/// Inverse of format_code. Throws std::invalid_argument on any malformed line,
/// a count mismatch, a wrong line length, or duplicate centers.
CoveringCode parse_code(std::string_view text);

void write_code_file(const std::filesystem::path& path, const CoveringCode& code);
CoveringCode read_code_file(const std::filesystem::path& path);

/// Cache file name for (n, r) under a cache directory, versioned by format id.
std::filesystem::path code_cache_path(const std::filesystem::path& dir, std::size_t n, std::size_t r);

}  // namespace effdim
