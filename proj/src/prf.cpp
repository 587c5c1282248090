#include "effdim/prf.hpp"

#include <stdexcept>
#include <unordered_map>

namespace effdim {

std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CounterRng::CounterRng(std::uint64_t seed, std::string_view role) noexcept
    : key_(mix64(seed ^ mix64(fnv1a(role)))) {}

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  // Lemire's method: accept when the low half clears the threshold.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
    if (static_cast<std::uint64_t>(product) >= threshold) {
      return static_cast<std::uint64_t>(product >> 64);
    }
  }
}

std::vector<std::uint64_t> sample_without_replacement(CounterRng& rng, std::uint64_t population,
                                                      std::uint64_t count) {
  if (count > population) throw std::invalid_argument("sample_without_replacement: count exceeds population");
  std::unordered_map<std::uint64_t, std::uint64_t> displaced;
  auto value_at = [&](std::uint64_t i) {
    const auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t j = i + rng.below(population - i);
    const std::uint64_t vi = value_at(i);
    out.push_back(value_at(j));
    displaced[j] = vi;
  }
  return out;
}

}  // namespace effdim
