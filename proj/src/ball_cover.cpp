#include <algorithm>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

#include "effdim/covercode.hpp"
#include "effdim/prf.hpp"

namespace effdim {

namespace {

constexpr std::size_t kSeedsPerLevel = 8;
constexpr std::size_t kAttemptCap = 50;

std::uint64_t ball_cover_target(std::size_t n, std::size_t q, std::size_t r) {
  using Float50 = boost::multiprecision::cpp_bin_float_50;
  const BigInt v_q = ball_volume(n, q).value;
  const Float50 value = boost::math::constants::ln_two<Float50>() * Float50(n + 1) * Float50(v_q) /
                        Float50(ball_volume(n, r).value);
  const BigInt target = static_cast<BigInt>(boost::multiprecision::ceil(value));
  return static_cast<std::uint64_t>(std::min(target, v_q));
}

/// True iff every point of `region` lies within r of some center.
bool covers(std::size_t n, std::size_t r, const std::vector<Word>& centers, const std::vector<Word>& region) {
  const std::size_t space = std::size_t{1} << n;
  constexpr std::uint8_t kUnseen = 0xff;
  std::vector<std::uint8_t> dist(space, kUnseen);
  std::vector<Word> frontier;
  for (Word c : centers) {
    dist[c] = 0;
    frontier.push_back(c);
  }
  std::vector<Word> next;
  for (std::size_t level = 0; level < r && !frontier.empty(); ++level) {
    next.clear();
    for (Word w : frontier) {
      for (std::size_t b = 0; b < n; ++b) {
        const Word v = w ^ (Word{1} << b);
        if (dist[v] == kUnseen) {
          dist[v] = static_cast<std::uint8_t>(level + 1);
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return std::all_of(region.begin(), region.end(), [&](Word t) { return dist[t] != kUnseen; });
}

}  // namespace

BallCover ball_cover(std::size_t n, std::size_t q, std::size_t r, std::uint64_t seed, std::size_t cap) {
  if (q > n) throw std::invalid_argument("ball_cover: q exceeds block length");
  if (n > cap || n > 30) {
    throw std::length_error(fmt::format("ball_cover: n={} exceeds the exhaustive cap {}", n, cap));
  }
  BallCover out;
  out.n = n;
  out.q = q;
  out.r = r;
  out.seed = seed;
  if (q <= r) {
    out.centers = {0};
    out.target = 1;
    out.attempts = 0;
    out.achieved_factor = ball_volume(n, std::min(r, n)).value.convert_to<double>() /
                          ball_volume(n, q).value.convert_to<double>();
    return out;
  }

  std::vector<Word> region;
  for_each_in_ball(n, 0, q, [&](Word w) { region.push_back(w); });
  out.target = ball_cover_target(n, q, r);
  const std::uint64_t population = region.size();

  for (std::size_t attempt = 0; attempt < kAttemptCap; ++attempt) {
    const std::size_t level = attempt / kSeedsPerLevel;
    const std::uint64_t count = level >= 63 ? population : std::min(population, out.target << level);
    CounterRng rng(seed, fmt::format("ballcover:n={},q={},r={},attempt={}", n, q, r, attempt));
    std::vector<Word> centers;
    centers.reserve(count);
    for (std::uint64_t i : sample_without_replacement(rng, population, count)) centers.push_back(region[i]);
    if (covers(n, r, centers, region)) {
      std::sort(centers.begin(), centers.end());
      out.centers = std::move(centers);
      out.attempts = attempt + 1;
      out.achieved_factor = static_cast<double>(out.centers.size()) *
                            ball_volume(n, r).value.convert_to<double>() /
                            static_cast<double>(population);
      return out;
    }
  }
  throw std::runtime_error(
      fmt::format("ball_cover(n={}, q={}, r={}, seed={}): no cover found in {} attempts", n, q, r, seed, kAttemptCap));
}

}  // namespace effdim
