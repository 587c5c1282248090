#include "effdim/covercode.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

#include "effdim/code_file.hpp"
#include "effdim/parallel.hpp"
#include "effdim/prf.hpp"

namespace effdim {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

void check_cap(std::size_t n, std::size_t cap, std::string_view what) {
  if (n > cap) {
    throw std::length_error(
        fmt::format("{}: n={} exceeds the exhaustive cap {} (raise it explicitly with --cap)", what, n, cap));
  }
  if (n > 30) throw std::length_error(fmt::format("{}: n={} is beyond any exhaustive range", what, n));
}

/// In-place unnormalized Walsh-Hadamard transform.
void walsh_hadamard(std::vector<std::int64_t>& a) {
  const std::size_t size = a.size();
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t x = a[j];
        const std::int64_t y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

/// K[w][k] = sum_j (-1)^j C(w,j) C(n-w,k-j), the transform of the weight-k shell at a weight-w point.
std::vector<std::vector<std::int64_t>> krawtchouk_table(std::size_t n) {
  std::vector<std::vector<std::int64_t>> table(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (std::size_t w = 0; w <= n; ++w) {
    // Coefficients of (1 - z)^w (1 + z)^(n - w).
    std::vector<std::int64_t> poly{1};
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t sign = i < w ? -1 : 1;
      std::vector<std::int64_t> next(poly.size() + 1, 0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k] += poly[k];
        next[k + 1] += sign * poly[k];
      }
      poly = std::move(next);
    }
    table[w] = std::move(poly);
  }
  return table;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

}  // namespace

std::uint64_t target_size(std::size_t n, std::size_t r) {
  if (r == 0) throw std::invalid_argument("target_size: radius 0 is excluded");
  if (r > n) throw std::invalid_argument("target_size: radius exceeds block length");
  if (n > 62) throw std::invalid_argument("target_size: n must be at most 62");
  const Float50 ln2 = boost::math::constants::ln_two<Float50>();
  const Float50 space = Float50(BigInt(1) << n);
  const Float50 volume = Float50(ball_volume(n, r).value);
  const Float50 value = ln2 * Float50(n + 1) * space / volume;
  return static_cast<std::uint64_t>(boost::multiprecision::ceil(value));
}

CoveringCode build_random_code(std::size_t n, std::size_t r, std::uint64_t seed) {
  const std::uint64_t count = target_size(n, r);
  const std::uint64_t space = std::uint64_t{1} << n;
  if (count > space) {
    throw std::domain_error(fmt::format("build_random_code: S={} exceeds 2^{}", count, n));
  }
  CounterRng rng(seed, fmt::format("covercode:n={},r={}", n, r));
  CoveringCode code;
  code.n = n;
  code.r = r;
  code.seed = seed;
  code.centers = sample_without_replacement(rng, space, count);
  return code;
}

CoveringCode make_code(std::size_t n, std::size_t r, std::vector<Word> centers, std::uint64_t seed) {
  if (n > 64) throw std::invalid_argument("make_code: n must be at most 64");
  if (r > n) throw std::invalid_argument("make_code: radius exceeds block length");
  const Word limit_mask = n == 64 ? ~Word{0} : (Word{1} << n) - 1;
  std::unordered_set<Word> seen;
  for (Word w : centers) {
    if ((w & ~limit_mask) != 0) throw std::invalid_argument("make_code: center longer than n bits");
    if (!seen.insert(w).second) throw std::invalid_argument("make_code: duplicate center");
  }
  CoveringCode code;
  code.n = n;
  code.r = r;
  code.seed = seed;
  code.centers = std::move(centers);
  return code;
}

CoverageReport verify_covering_radius(const CoveringCode& code, std::size_t cap) {
  check_cap(code.n, cap, "verify_covering_radius");
  const std::size_t space = std::size_t{1} << code.n;
  constexpr std::uint8_t kUnseen = 0xff;
  std::vector<std::uint8_t> dist(space, kUnseen);
  std::vector<Word> frontier;
  for (Word c : code.centers) {
    if (dist[c] == kUnseen) {
      dist[c] = 0;
      frontier.push_back(c);
    }
  }
  std::vector<Word> next;
  std::size_t level = 0;
  while (!frontier.empty()) {
    next.clear();
    for (Word w : frontier) {
      for (std::size_t b = 0; b < code.n; ++b) {
        const Word v = w ^ (Word{1} << b);
        if (dist[v] == kUnseen) {
          dist[v] = static_cast<std::uint8_t>(level + 1);
          next.push_back(v);
        }
      }
    }
    if (!next.empty()) ++level;
    frontier.swap(next);
  }
  CoverageReport report;
  report.covering_radius = code.centers.empty() ? code.n + 1 : level;
  for (auto d : dist) {
    if (d == kUnseen || d > code.r) ++report.uncovered;
  }
  report.pass = report.uncovered == 0;
  return report;
}

DistributionReport verify_well_distributed(const CoveringCode& code, std::size_t cap) {
  check_cap(code.n, cap, "verify_well_distributed");
  const std::size_t n = code.n;
  const std::size_t space = std::size_t{1} << n;
  std::vector<std::int64_t> spectrum(space, 0);
  for (Word c : code.centers) spectrum[c] = 1;
  walsh_hadamard(spectrum);
  const auto kraw = krawtchouk_table(n);
  std::vector<std::size_t> weight(space);
  for (std::size_t u = 0; u < space; ++u) weight[u] = static_cast<std::size_t>(std::popcount(u));

  const BigInt v_r = ball_volume(n, code.r).value;
  DistributionReport report;
  report.shells.resize(n - code.r + 1);
  parallel_for(report.shells.size(), [&](std::size_t slot) {
    const std::size_t q = code.r + slot;
    std::vector<std::int64_t> ball_hat(n + 1, 0);
    for (std::size_t w = 0; w <= n; ++w) {
      for (std::size_t k = 0; k <= q; ++k) ball_hat[w] += kraw[w][k];
    }
    std::vector<std::int64_t> conv(space);
    for (std::size_t u = 0; u < space; ++u) conv[u] = spectrum[u] * ball_hat[weight[u]];
    walsh_hadamard(conv);
    std::int64_t best = 0;
    for (auto v : conv) best = std::max(best, v);
    ShellRecord& rec = report.shells[slot];
    rec.q = q;
    rec.max_count = static_cast<std::uint64_t>(best >> n);
    rec.bound = ceil_div(BigInt(5 * (n + 1)) * ball_volume(n, q).value, v_r);
    rec.pass = BigInt(rec.max_count) < rec.bound;
  });
  report.pass = std::all_of(report.shells.begin(), report.shells.end(), [](const ShellRecord& s) { return s.pass; });
  return report;
}

NearestCenter nearest_center(const CoveringCode& code, const BitBlock& tau) {
  if (code.centers.empty()) throw std::invalid_argument("nearest_center: empty code");
  if (tau.size() != code.n) throw std::invalid_argument("nearest_center: length mismatch");
  const auto [best, dist] = nearest_in(code.centers, tau.to_word());
  return {BitBlock::from_word(code.n, best), dist};
}

std::pair<Word, std::size_t> nearest_in(const std::vector<Word>& centers, Word tau) {
  if (centers.empty()) throw std::invalid_argument("nearest_in: empty center list");
  Word best = centers.front();
  int best_dist = word_distance(best, tau);
  for (Word c : centers) {
    const int d = word_distance(c, tau);
    if (d < best_dist || (d == best_dist && c < best)) {
      best = c;
      best_dist = d;
    }
  }
  return {best, static_cast<std::size_t>(best_dist)};
}

NearestCenterTable::NearestCenterTable(const CoveringCode& code, std::size_t cap) : n_(code.n) {
  check_cap(code.n, cap, "NearestCenterTable");
  if (code.centers.empty()) throw std::invalid_argument("NearestCenterTable: empty code");
  const std::size_t space = std::size_t{1} << n_;
  constexpr std::uint8_t kUnseen = 0xff;
  center_.assign(space, 0);
  distance_.assign(space, kUnseen);
  std::vector<Word> frontier;
  for (Word c : code.centers) {
    distance_[c] = 0;
    center_[c] = c;
    frontier.push_back(c);
  }
  std::vector<Word> next;
  std::uint8_t level = 0;
  while (!frontier.empty()) {
    next.clear();
    for (Word w : frontier) {
      for (std::size_t b = 0; b < n_; ++b) {
        const Word v = w ^ (Word{1} << b);
        if (distance_[v] == kUnseen) {
          distance_[v] = static_cast<std::uint8_t>(level + 1);
          center_[v] = center_[w];
          next.push_back(v);
        } else if (distance_[v] == level + 1 && center_[w] < center_[v]) {
          center_[v] = center_[w];
        }
      }
    }
    ++level;
    frontier.swap(next);
  }
}

std::optional<std::filesystem::path> default_cache_dir() {
  const char* env = std::getenv("EFFDIM_CODE_CACHE");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

namespace {

struct Memo {
  std::mutex mutex;
  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const CoveringCode>> codes;
  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const NearestCenterTable>> tables;
};

Memo& memo() {
  static Memo instance;
  return instance;
}

std::shared_ptr<const CoveringCode> load_cached(const std::filesystem::path& path, std::size_t n, std::size_t r,
                                                std::size_t retry_cap) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return nullptr;
  try {
    CoveringCode stored = read_code_file(path);
    if (stored.n != n || stored.r != r || stored.seed >= retry_cap) return nullptr;
    CoveringCode rebuilt = build_random_code(n, r, stored.seed);
    if (rebuilt.centers != stored.centers) return nullptr;
    rebuilt.covering_verified = true;
    rebuilt.distribution_verified = true;
    return std::make_shared<const CoveringCode>(std::move(rebuilt));
  } catch (const std::exception&) {
    return nullptr;  // unreadable or stale entries are rebuilt and overwritten
  }
}

}  // namespace

std::shared_ptr<const CoveringCode> canonical_code(std::size_t n, std::size_t r, const CanonicalOptions& options) {
  Memo& m = memo();
  std::lock_guard lock(m.mutex);
  const auto key = std::make_pair(n, r);
  if (const auto it = m.codes.find(key); it != m.codes.end()) return it->second;

  if (options.cache_dir) {
    if (auto cached = load_cached(code_cache_path(*options.cache_dir, n, r), n, r, options.retry_cap)) {
      m.codes.emplace(key, cached);
      return cached;
    }
  }

  std::size_t covering_failures = 0;
  std::size_t distribution_failures = 0;
  std::uint64_t worst_uncovered = 0;
  for (std::uint64_t seed = 0; seed < options.retry_cap; ++seed) {
    CoveringCode code = build_random_code(n, r, seed);
    const CoverageReport coverage = verify_covering_radius(code, options.covering_cap);
    code.covering_verified = coverage.pass;
    if (!coverage.pass) {
      ++covering_failures;
      worst_uncovered = std::max(worst_uncovered, coverage.uncovered);
      continue;
    }
    const DistributionReport distribution = verify_well_distributed(code, options.distribution_cap);
    code.distribution_verified = distribution.pass;
    if (!distribution.pass) {
      ++distribution_failures;
      continue;
    }
    auto shared = std::make_shared<const CoveringCode>(std::move(code));
    if (options.cache_dir) write_code_file(code_cache_path(*options.cache_dir, n, r), *shared);
    m.codes.emplace(key, shared);
    return shared;
  }
  throw std::runtime_error(fmt::format(
      "canonical_code(n={}, r={}): no seed below {} passed ({} covering failures, worst {} uncovered; {} "
      "distribution failures)",
      n, r, options.retry_cap, covering_failures, worst_uncovered, distribution_failures));
}

std::shared_ptr<const CoveringCode> canonical_code(std::size_t n, std::size_t r) {
  CanonicalOptions options;
  options.cache_dir = default_cache_dir();
  return canonical_code(n, r, options);
}

std::shared_ptr<const NearestCenterTable> canonical_table(std::size_t n, std::size_t r) {
  const auto code = canonical_code(n, r);
  Memo& m = memo();
  std::lock_guard lock(m.mutex);
  const auto key = std::make_pair(n, r);
  if (const auto it = m.tables.find(key); it != m.tables.end()) return it->second;
  auto table = std::make_shared<const NearestCenterTable>(*code);
  m.tables.emplace(key, table);
  return table;
}

void clear_code_memo() {
  Memo& m = memo();
  std::lock_guard lock(m.mutex);
  m.codes.clear();
  m.tables.clear();
}

}  // namespace effdim
