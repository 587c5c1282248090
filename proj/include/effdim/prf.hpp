#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace effdim {

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-mode SplitMix64: output i is the i-th SplitMix64 output from a key
/// derived from (seed, role). Every generator in the library is one of these;
/// distinct roles give independent streams for the same user seed.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::string_view role) noexcept;

  /// Random access to the stream.
  std::uint64_t at(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  }

  std::uint64_t next() noexcept { return at(counter_++); }

  /// Uniform integer in [0, bound), bound >= 1, by multiply-shift with rejection
  /// (platform independent, unlike std::uniform_int_distribution).
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// `count` distinct values from [0, population), in draw order, by a partial
/// Fisher-Yates shuffle that materializes only displaced entries.
std::vector<std::uint64_t> sample_without_replacement(CounterRng& rng, std::uint64_t population,
                                                      std::uint64_t count);

/// 64-bit FNV-1a, used to fold role tags into keys.
std::uint64_t fnv1a(std::string_view text) noexcept;

}  // namespace effdim
