#pragma once

#include <cstddef>
#include <cstdint>

#include "effdim/bitblock.hpp"
#include "effdim/hamming.hpp"

namespace effdim {

/// Elias gamma length for k >= 1: floor(log2 k) zeros, then k in binary.
std::size_t gamma_length(std::uint64_t k);

class BitWriter {
 public:
  void put(bool bit) { bits_.push_back(bit); }
  /// Low `width` bits of value, most significant first.
  void put_uint(std::uint64_t value, std::size_t width);
  void put_big(const BigInt& value, std::size_t width);
  /// Throws std::invalid_argument for k = 0.
  void put_gamma(std::uint64_t k);

  std::size_t size() const noexcept { return bits_.size(); }
  const BitBlock& bits() const noexcept { return bits_; }
  BitBlock take() { return std::move(bits_); }

 private:
  BitBlock bits_;
};

/// Reads a writer's output back. Every accessor throws std::out_of_range when
/// the stream ends early.
class BitReader {
 public:
  explicit BitReader(const BitBlock& bits) : bits_(bits) {}

  bool get();
  std::uint64_t get_uint(std::size_t width);
  BigInt get_big(std::size_t width);
  std::uint64_t get_gamma();

  std::size_t position() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ == bits_.size(); }

 private:
  const BitBlock& bits_;
  std::size_t pos_ = 0;
};

}  // namespace effdim
