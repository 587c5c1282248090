#include "effdim/bitblock.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace effdim {

BitBlock::BitBlock(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

BitBlock BitBlock::from_string(std::string_view text) {
  BitBlock out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      out.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    } else if (text[i] != '0') {
      throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
  }
  return out;
}

BitBlock BitBlock::from_word(std::size_t n, std::uint64_t word) {
  if (n > 64) throw std::invalid_argument("from_word requires n <= 64");
  BitBlock out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((word >> (n - 1 - i)) & 1u) out.words_[0] |= std::uint64_t{1} << i;
  }
  return out;
}

bool BitBlock::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("BitBlock index out of range");
  return (*this)[i];
}

void BitBlock::set(std::size_t i, bool value) {
  if (i >= size_) throw std::out_of_range("BitBlock index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void BitBlock::push_back(bool value) {
  if ((size_ & 63) == 0) words_.push_back(0);
  if (value) words_[size_ >> 6] |= std::uint64_t{1} << (size_ & 63);
  ++size_;
}

void BitBlock::append(const BitBlock& other) {
  for (std::size_t i = 0; i < other.size(); ++i) push_back(other[i]);
}

std::uint64_t BitBlock::to_word() const {
  if (size_ > 64) throw std::invalid_argument("to_word requires size() <= 64");
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < size_; ++i) word = (word << 1) | static_cast<std::uint64_t>((*this)[i]);
  return word;
}

std::size_t BitBlock::count_ones() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::string BitBlock::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

BitBlock BitBlock::slice(std::size_t begin, std::size_t length) const {
  if (begin > size_ || length > size_ - begin) throw std::out_of_range("BitBlock slice out of range");
  BitBlock out(length);
  for (std::size_t i = 0; i < length; ++i) {
    if ((*this)[begin + i]) out.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  return out;
}

std::strong_ordering operator<=>(const BitBlock& a, const BitBlock& b) noexcept {
  const std::size_t common = std::min(a.size_, b.size_);
  const std::size_t full_words = common / 64;
  for (std::size_t w = 0; w <= full_words && w < a.words_.size() && w < b.words_.size(); ++w) {
    std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (w == full_words) {
      const std::size_t tail = common & 63;
      diff &= tail == 0 ? 0 : (std::uint64_t{1} << tail) - 1;
    }
    if (diff != 0) {
      const int pos = std::countr_zero(diff);
      return ((a.words_[w] >> pos) & 1u) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  }
  return a.size_ <=> b.size_;
}

}  // namespace effdim
