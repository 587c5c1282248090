#include "effdim/ball_rank.hpp"

#include <stdexcept>

namespace effdim {

BigInt ball_rank(const BitBlock& x) {
  const std::size_t length = x.size();
  const std::size_t weight = x.count_ones();
  BigInt rank = weight == 0 ? BigInt(0) : ball_volume(length, weight - 1).value;

  // Scan right to left. With z zeros and o ones to the right of position i, a
  // one at i is preceded by C(z+o, o+1) strings that agree before i and hold a
  // zero at i. T tracks that binomial incrementally.
  BigInt t = 0;
  std::size_t zeros = 0;
  std::size_t ones = 0;
  for (std::size_t i = length; i-- > 0;) {
    if (x[i]) {
      rank += t;
      t = t * (zeros + ones + 1) / (ones + 2);
      ++ones;
    } else {
      t = zeros == 0 ? BigInt(1) : t * (zeros + ones + 1) / zeros;
      ++zeros;
    }
  }
  return rank;
}

BitBlock ball_unrank(std::size_t length, const BigInt& rank) {
  if (rank < 0 || rank >= (BigInt(1) << length)) throw std::out_of_range("ball_unrank: rank out of range");
  std::size_t weight = 0;
  BigInt below = 0;  // V(length, weight - 1)
  BigInt shell = 1;  // C(length, weight)
  while (rank >= below + shell) {
    below += shell;
    shell = shell * (length - weight) / (weight + 1);
    ++weight;
  }
  BigInt offset = rank - below;
  BitBlock out(length);
  if (length == 0) return out;
  // c = C(a, w) with a positions after i and w ones still to place.
  std::size_t a = length - 1;
  std::size_t w = weight;
  BigInt c = binomial(a, w);
  for (std::size_t i = 0; i < length; ++i) {
    const bool one = offset >= c;
    if (one) {
      offset -= c;
      out.set(i, true);
    }
    if (a == 0) break;
    if (one) {
      c = w == 0 ? BigInt(0) : c * w / a;
      --w;
    } else {
      c = c * (a - w) / a;
    }
    --a;
  }
  return out;
}

}  // namespace effdim
