#include "effdim/hamming.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace effdim {

std::size_t hamming_distance(const BitBlock& a, const BitBlock& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming_distance requires blocks of equal length");
  }
  std::size_t total = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) total += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  return total;
}

double density(const BitBlock& a) {
  if (a.empty()) throw std::invalid_argument("density of an empty block is undefined");
  return static_cast<double>(a.count_ones()) / static_cast<double>(a.size());
}

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

BallVolume ball_volume(std::size_t n, std::size_t r) {
  if (r > n) throw std::invalid_argument("ball radius exceeds block length");
  BallVolume out{n, r, 0};
  BigInt term = 1;
  for (std::size_t i = 0; i <= r; ++i) {
    out.value += term;
    term *= n - i;
    term /= i + 1;
  }
  return out;
}

double BallVolume::log2() const {
  const std::size_t top = boost::multiprecision::msb(value);
  if (top < 1000) return std::log2(value.convert_to<double>());
  const std::size_t shift = top - 60;
  const BigInt head = value >> shift;
  return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

std::size_t index_width(const BigInt& count) {
  if (count <= 1) return 0;
  return boost::multiprecision::msb(BigInt(count - 1)) + 1;
}

void for_each_in_ball(std::size_t n, Word center, std::size_t r, const std::function<void(Word)>& visit) {
  if (n > 64) throw std::invalid_argument("word-form ball enumeration requires n <= 64");
  if (r > n) throw std::invalid_argument("ball radius exceeds block length");
  std::vector<Word> shell;
  for (std::size_t k = 0; k <= r; ++k) {
    shell.clear();
    if (k == 0) {
      shell.push_back(center);
    } else if (k == 64) {
      shell.push_back(~center);
    } else {
      // Gosper's hack over weight-k masks of n bits.
      Word mask = (Word{1} << k) - 1;
      const Word limit = n == 64 ? 0 : Word{1} << n;
      while (true) {
        shell.push_back(center ^ mask);
        const Word low = mask & (~mask + 1);
        const Word ripple = mask + low;
        if (ripple == 0 || (limit != 0 && ripple >= limit)) break;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
        if (limit != 0 && mask >= limit) break;
      }
    }
    std::sort(shell.begin(), shell.end());
    for (Word w : shell) visit(w);
  }
}

std::vector<BitBlock> enumerate_ball(const BitBlock& center, std::size_t r) {
  const std::size_t n = center.size();
  if (r > n) throw std::invalid_argument("ball radius exceeds block length");
  if (n > 64) throw std::invalid_argument("enumerate_ball supports blocks of length <= 64");
  std::vector<BitBlock> out;
  for_each_in_ball(n, center.to_word(), r, [&](Word w) { out.push_back(BitBlock::from_word(n, w)); });
  return out;
}

}  // namespace effdim
