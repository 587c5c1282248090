#include "effdim/prefix_code.hpp"

#include <bit>
#include <stdexcept>

namespace effdim {

std::size_t gamma_length(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("gamma code is defined for k >= 1");
  return 2 * static_cast<std::size_t>(std::bit_width(k) - 1) + 1;
}

void BitWriter::put_uint(std::uint64_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) put(i < 64 && ((value >> i) & 1u));
}

void BitWriter::put_big(const BigInt& value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) put(boost::multiprecision::bit_test(value, static_cast<unsigned>(i)));
}

void BitWriter::put_gamma(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("gamma code is defined for k >= 1");
  const auto width = static_cast<std::size_t>(std::bit_width(k));
  for (std::size_t i = 1; i < width; ++i) put(false);
  put_uint(k, width);
}

bool BitReader::get() {
  if (pos_ >= bits_.size()) throw std::out_of_range("bit stream ended early");
  return bits_[pos_++];
}

std::uint64_t BitReader::get_uint(std::size_t width) {
  if (width > 64) throw std::invalid_argument("get_uint width exceeds 64");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < width; ++i) value = (value << 1) | (get() ? 1u : 0u);
  return value;
}

BigInt BitReader::get_big(std::size_t width) {
  BigInt value = 0;
  for (std::size_t i = 0; i < width; ++i) {
    value <<= 1;
    if (get()) value |= 1;
  }
  return value;
}

std::uint64_t BitReader::get_gamma() {
  std::size_t zeros = 0;
  while (!get()) {
    if (++zeros > 63) throw std::invalid_argument("malformed gamma code");
  }
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < zeros; ++i) value = (value << 1) | (get() ? 1u : 0u);
  return value;
}

}  // namespace effdim
