#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "effdim/bitblock.hpp"

namespace effdim {

/// Writes content to a sibling temporary file, then renames it over path, so
/// readers never observe a partial file. Parent directories are created.
/// Existing non-regular targets (devices, pipes) are written in place.
void write_atomically(const std::filesystem::path& path, std::string_view content);

/// Whole-file read. Throws std::runtime_error if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// '0'/'1' characters followed by a newline.
std::string bits_to_text(const BitBlock& bits);

/// 8-byte little-endian bit count, then the bits packed MSB-first into bytes,
/// the last byte zero-padded.
std::string pack_bits(const BitBlock& bits);

/// Inverse of pack_bits. Throws std::invalid_argument on a short or oversized payload.
BitBlock unpack_bits(std::string_view data);

}  // namespace effdim
