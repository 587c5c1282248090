#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "effdim/bitblock.hpp"
#include "effdim/hamming.hpp"

namespace effdim {

inline constexpr std::size_t kCoveringCap = 16;
inline constexpr std::size_t kDistributionCap = 14;
inline constexpr std::size_t kSeedRetryCap = 50;

/// Random covering code for the parameters (n, r, seed). Centers are held in
/// word form in construction order.
struct CoveringCode {
  std::size_t n = 0;
  std::size_t r = 0;
  std::uint64_t seed = 0;
  std::vector<Word> centers;

  std::optional<bool> covering_verified;
  std::optional<bool> distribution_verified;

  std::size_t size() const noexcept { return centers.size(); }
  BitBlock center(std::size_t i) const { return BitBlock::from_word(n, centers.at(i)); }
};

/// ceil(ln 2 * (n+1) * 2^n / V(n,r)), evaluated at 50 significant digits.
/// Throws std::invalid_argument for r = 0 or r > n.
std::uint64_t target_size(std::size_t n, std::size_t r);

/// target_size(n, r) distinct centers drawn uniformly without replacement by a
/// seeded partial Fisher-Yates shuffle of [0, 2^n). Not verified.
CoveringCode build_random_code(std::size_t n, std::size_t r, std::uint64_t seed);

/// Code from an explicit center list (duplicates rejected). Used by the CLI
/// and by tests.
CoveringCode make_code(std::size_t n, std::size_t r, std::vector<Word> centers, std::uint64_t seed = 0);

struct CoverageReport {
  bool pass = false;
  std::uint64_t uncovered = 0;   ///< strings farther than r from every center
  std::size_t covering_radius = 0;  ///< max over strings of the distance to the code
};

/// Exhaustive multi-source BFS over 2^n. Throws std::length_error past cap.
CoverageReport verify_covering_radius(const CoveringCode& code, std::size_t cap = kCoveringCap);

struct ShellRecord {
  std::size_t q = 0;
  std::uint64_t max_count = 0;  ///< max over tau of |B_q(tau) ∩ C|
  BigInt bound;                 ///< ceil(5(n+1) V(n,q) / V(n,r))
  bool pass = false;
};

struct DistributionReport {
  std::vector<ShellRecord> shells;  ///< q = r, ..., n
  bool pass = false;
};

/// Computes every ball count |B_q(tau) ∩ C| at once as an XOR convolution of
/// the code indicator with the radius-q ball, via Walsh-Hadamard transforms in
/// exact integer arithmetic. Throws std::length_error past cap.
DistributionReport verify_well_distributed(const CoveringCode& code, std::size_t cap = kDistributionCap);

struct NearestCenter {
  BitBlock center;
  std::size_t distance = 0;
};

/// Linear scan; ties go to the lexicographically least center.
NearestCenter nearest_center(const CoveringCode& code, const BitBlock& tau);

/// Nearest-center lookup for every string of length n, built by multi-source BFS.
/// A string at distance d inherits the least center among its neighbours at
/// distance d-1, which is the least of its own nearest centers.
class NearestCenterTable {
 public:
  explicit NearestCenterTable(const CoveringCode& code, std::size_t cap = kCoveringCap);

  std::size_t n() const noexcept { return n_; }
  Word center(Word tau) const { return center_.at(tau); }
  std::size_t distance(Word tau) const { return distance_.at(tau); }

 private:
  std::size_t n_;
  std::vector<Word> center_;
  std::vector<std::uint8_t> distance_;
};

struct CanonicalOptions {
  std::size_t covering_cap = kCoveringCap;
  std::size_t distribution_cap = kDistributionCap;
  std::size_t retry_cap = kSeedRetryCap;
  /// Disk cache directory. Empty disables the disk layer; the in-process memo
  /// is always active.
  std::optional<std::filesystem::path> cache_dir;
};

/// Directory named by EFFDIM_CODE_CACHE, if set and non-empty.
std::optional<std::filesystem::path> default_cache_dir();

/// The random code for the smallest seed in 0, 1, 2, ... that passes both
/// verifications. Throws std::runtime_error with failure statistics when no
/// seed below retry_cap succeeds.
std::shared_ptr<const CoveringCode> canonical_code(std::size_t n, std::size_t r, const CanonicalOptions& options);
std::shared_ptr<const CoveringCode> canonical_code(std::size_t n, std::size_t r);

/// Memoized lookup table for canonical_code(n, r).
std::shared_ptr<const NearestCenterTable> canonical_table(std::size_t n, std::size_t r);

/// Forgets memoized codes and tables (disk cache untouched).
void clear_code_memo();

struct MinCover {
  std::size_t size = 0;
  std::vector<Word> centers;  ///< one optimal cover
};

/// Exact K(n, r) by branch and bound over bitmask balls. Throws
/// std::length_error for n > 5.
MinCover min_cover_size_exact(std::size_t n, std::size_t r);

struct BallCover {
  std::size_t n = 0;
  std::size_t q = 0;
  std::size_t r = 0;
  std::uint64_t seed = 0;
  std::vector<Word> centers;  ///< sorted ascending
  std::uint64_t target = 0;   ///< min(V(n,q), ceil(ln 2 (n+1) V(n,q) / V(n,r)))
  std::size_t attempts = 0;
  /// |centers| * V(n,r) / V(n,q), the achieved polynomial factor.
  double achieved_factor = 0.0;
};

/// Random cover of B_q(0^n) by radius-r balls with centers inside B_q(0^n).
/// Eight seeds per size level, doubling the size after each level, 50
/// attempts in total. q <= r is answered by {0^n}.
BallCover ball_cover(std::size_t n, std::size_t q, std::size_t r, std::uint64_t seed,
                     std::size_t cap = kCoveringCap);

/// Nearest center of a ball cover, ties to the least word.
std::pair<Word, std::size_t> nearest_in(const std::vector<Word>& centers, Word tau);

}  // namespace effdim
