#include <algorithm>
#include <bit>
#include <stdexcept>

#include <fmt/format.h>

#include "effdim/covercode.hpp"

namespace effdim {

namespace {

struct CoverSearch {
  std::size_t points = 0;
  std::uint64_t full = 0;
  std::size_t volume = 0;
  std::vector<std::uint64_t> balls;  // balls[c] = points within r of c
  std::vector<Word> chosen;
  std::vector<Word> best;

  std::size_t lower_bound(std::uint64_t covered) const {
    const auto left = static_cast<std::size_t>(std::popcount(full & ~covered));
    return (left + volume - 1) / volume;
  }

  void search(std::uint64_t covered) {
    if (covered == full) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    if (chosen.size() + lower_bound(covered) >= best.size()) return;
    // Some center must cover the least uncovered point; those centers are
    // exactly the points of its ball.
    const auto target = static_cast<std::size_t>(std::countr_zero(full & ~covered));
    std::vector<std::pair<int, Word>> options;
    for (std::size_t c = 0; c < points; ++c) {
      if ((balls[target] >> c) & 1u) {
        options.emplace_back(-std::popcount(balls[c] & ~covered), static_cast<Word>(c));
      }
    }
    std::sort(options.begin(), options.end());
    for (const auto& [gain, c] : options) {
      chosen.push_back(c);
      search(covered | balls[c]);
      chosen.pop_back();
    }
  }
};

}  // namespace

MinCover min_cover_size_exact(std::size_t n, std::size_t r) {
  if (n > 5) throw std::length_error(fmt::format("min_cover_size_exact: n={} exceeds the exact-search cap 5", n));
  if (r > n) throw std::invalid_argument("min_cover_size_exact: radius exceeds block length");
  CoverSearch s;
  s.points = std::size_t{1} << n;
  s.full = s.points == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s.points) - 1;
  s.volume = static_cast<std::size_t>(ball_volume(n, r).value);
  s.balls.assign(s.points, 0);
  for (std::size_t c = 0; c < s.points; ++c) {
    for (std::size_t t = 0; t < s.points; ++t) {
      if (static_cast<std::size_t>(word_distance(c, t)) <= r) s.balls[c] |= std::uint64_t{1} << t;
    }
  }

  // Greedy cover as the initial incumbent.
  {
    std::uint64_t covered = 0;
    while (covered != s.full) {
      std::size_t pick = 0;
      int gain = -1;
      for (std::size_t c = 0; c < s.points; ++c) {
        const int g = std::popcount(s.balls[c] & ~covered);
        if (g > gain) {
          gain = g;
          pick = c;
        }
      }
      s.best.push_back(pick);
      covered |= s.balls[pick];
    }
  }

  // Translations are automorphisms of the cube, so some optimal cover contains 0^n.
  s.chosen.push_back(0);
  s.search(s.balls[0]);
  std::sort(s.best.begin(), s.best.end());
  return {s.best.size(), s.best};
}

}  // namespace effdim
