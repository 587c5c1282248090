#pragma once

#include <cstddef>

#include "effdim/bitblock.hpp"
#include "effdim/hamming.hpp"

namespace effdim {

/// Position of x in the enumeration of B_w(0^L), w = weight(x), ordered by
/// distance then lexicographically (the enumerate_ball order). Lies in
/// [V(L, w-1), V(L, w)).
BigInt ball_rank(const BitBlock& x);

/// Inverse of ball_rank for strings of the given length. Throws
/// std::out_of_range when rank >= 2^length.
BitBlock ball_unrank(std::size_t length, const BigInt& rank);

}  // namespace effdim
