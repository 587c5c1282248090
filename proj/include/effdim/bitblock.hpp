#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace effdim {

/// Finite binary string of exact length.
///
/// Bit 0 is the leftmost character of the textual form. Storage packs bit i
/// into word i/64 at position i%64; bits past size() are always zero.
/// Ordering is lexicographic on the textual form.
class BitBlock {
 public:
  BitBlock() = default;
  explicit BitBlock(std::size_t n);

  /// Parses a '0'/'1' string. Throws std::invalid_argument on other characters.
  static BitBlock from_string(std::string_view text);

  /// Builds an n-bit block (n <= 64) from a word whose most significant of the
  /// low n bits is bit 0. Numeric order of such words matches lexicographic order.
  static BitBlock from_word(std::size_t n, std::uint64_t word);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value);
  void push_back(bool value);
  void append(const BitBlock& other);

  /// Inverse of from_word. Requires size() <= 64.
  std::uint64_t to_word() const;

  std::size_t count_ones() const noexcept;
  std::string to_string() const;
  BitBlock slice(std::size_t begin, std::size_t length) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const BitBlock& a, const BitBlock& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const BitBlock& a, const BitBlock& b) noexcept;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

}  // namespace effdim
