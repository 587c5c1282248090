#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "effdim/bitblock.hpp"

namespace effdim {

using BigInt = boost::multiprecision::cpp_int;

/// Short strings (n <= 64) packed MSB-first, so numeric order is lexicographic.
using Word = std::uint64_t;

inline int word_distance(Word a, Word b) noexcept { return std::popcount(a ^ b); }

/// Number of positions where a and b differ. Throws std::invalid_argument on length mismatch.
std::size_t hamming_distance(const BitBlock& a, const BitBlock& b);

/// Fraction of ones. Throws std::invalid_argument for the empty block.
double density(const BitBlock& a);

/// Exact size of a Hamming ball, V(n, r) = sum_{i<=r} C(n, i).
struct BallVolume {
  std::size_t n = 0;
  std::size_t r = 0;
  BigInt value;

  double log2() const;
};

BigInt binomial(std::size_t n, std::size_t k);

/// Throws std::invalid_argument when r > n.
BallVolume ball_volume(std::size_t n, std::size_t r);

/// Bits needed to write an index in [0, count): ceil(log2 count), 0 when count <= 1.
std::size_t index_width(const BigInt& count);

/// Visits B_r(center) ordered by distance, then lexicographically. The first
/// element is the center. Word form; requires center length n <= 64.
void for_each_in_ball(std::size_t n, Word center, std::size_t r, const std::function<void(Word)>& visit);

/// Materialized B_r(center) in the same order. Exhaustive; intended for n up to ~24.
std::vector<BitBlock> enumerate_ball(const BitBlock& center, std::size_t r);

}  // namespace effdim
