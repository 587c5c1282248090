#include "effdim/io.hpp"

#include <atomic>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <unistd.h>

namespace effdim {

namespace {

void write_direct(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("write to {} failed", path.string()));
}

}  // namespace

void write_atomically(const std::filesystem::path& requested, std::string_view content) {
  static std::atomic<unsigned> sequence{0};
  // Devices and pipes (/dev/stdout, fifos) cannot be replaced by a rename.
  if (std::filesystem::exists(requested) && !std::filesystem::is_regular_file(requested)) {
    write_direct(requested, content);
    return;
  }
  // Replace the file a symlink points at, not the link itself.
  const std::filesystem::path path =
      std::filesystem::is_symlink(requested) ? std::filesystem::canonical(requested) : requested;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path temp = path;
  temp += fmt::format(".tmp.{}.{}", ::getpid(), sequence++);
  write_direct(temp, content);
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw std::runtime_error(fmt::format("cannot rename {} to {}: {}", temp.string(), path.string(), ec.message()));
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string bits_to_text(const BitBlock& bits) { return bits.to_string() + "\n"; }

std::string pack_bits(const BitBlock& bits) {
  std::string out(8 + (bits.size() + 7) / 8, '\0');
  std::uint64_t n = bits.size();
  for (std::size_t i = 0; i < 8; ++i) out[i] = static_cast<char>((n >> (8 * i)) & 0xff);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[8 + i / 8] = static_cast<char>(static_cast<unsigned char>(out[8 + i / 8]) | (0x80u >> (i % 8)));
  }
  return out;
}

BitBlock unpack_bits(std::string_view data) {
  if (data.size() < 8) throw std::invalid_argument("packed bitstream lacks its length header");
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[i])) << (8 * i);
  if (data.size() - 8 != (n + 7) / 8) throw std::invalid_argument("packed bitstream length does not match its header");
  BitBlock out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((static_cast<unsigned char>(data[8 + i / 8]) >> (7 - i % 8)) & 1u) out.set(i, true);
  }
  return out;
}

}  // namespace effdim
