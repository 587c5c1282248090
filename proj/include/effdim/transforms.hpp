#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "effdim/profile.hpp"
#include "effdim/streams.hpp"

namespace effdim {

/// Positions where a transformation changed its input, with the replaced blocks.
struct ChangeLog {
  std::size_t n = 0;
  std::vector<std::size_t> positions;  ///< strictly increasing
  struct Block {
    std::size_t start = 0;
    std::size_t length = 0;
    std::size_t radius = 0;   ///< distance budget for the block
    std::size_t changes = 0;  ///< actual Hamming distance to the input block
  };
  std::vector<Block> blocks;

  /// Changes strictly before position m, divided by m.
  double density_at(std::size_t m) const;
};

/// Diff of two sources over [0, n).
ChangeLog diff_log(const PrefixSource& input, const PrefixSource& output, std::size_t n);

std::string change_positions_csv(const ChangeLog& log);
/// Columns n, changes, density at each checkpoint.
std::string change_density_csv(const ChangeLog& log, const std::vector<std::size_t>& checkpoints);

struct TransformResult {
  SourcePtr output;  ///< materialized over [0, n)
  ChangeLog log;
};

/// X XOR Bernoulli(H^{-1}(t-s)) drawn with role "raise". Throws
/// std::domain_error when t < s.
SourcePtr raise_dimension(SourcePtr x, double s, double t, std::uint64_t seed);

/// Block-wise lowering of a Bernoulli-like input: each length-b block of weight
/// q is replaced by its nearest center in ball_cover(b, q, ceil(H^{-1}(s-t) b), seed),
/// so every block moves by at most that radius. A final partial block uses its
/// own length. t = s is the identity.
TransformResult lower_bernoulli(const PrefixSource& x, double s, double t, std::size_t block, std::size_t n,
                                std::uint64_t seed);

enum class ScheduleMode { strict, relaxed };

struct LoweringSchedule {
  double s = 0.0;
  double t = 0.0;
  double c = 0.0;
  double t_star = 0.0;
  double ratio = 0.0;
  ScheduleMode mode = ScheduleMode::relaxed;
  double growth = 4.0;
  std::vector<std::size_t> ell;  ///< stage starts
  std::vector<std::size_t> m;    ///< stage lengths

  /// (s - t) / (t - (1 - H(c))), the change-window length per unit of ell.
  double window_factor() const { return (s - t) / (t - t_star); }
};

/// Stages with ell_j + m_j <= horizon. Strict spacing takes the least
/// ell_{j+1} > ceil(ell_j (1 + factor))^2; relaxed spacing takes
/// ell_{j+1} = ceil((ell_j + m_j) G). Throws std::domain_error unless
/// 1 - H(c) < t < s, ell_1 >= 1 and (relaxed) G >= 2.
LoweringSchedule lowering_schedule(double s, double t, std::size_t ell1, ScheduleMode mode, std::size_t horizon,
                                   double growth = 4.0);

nlohmann::json schedule_json(const LoweringSchedule& schedule);

/// Block length used in stage j (0-based): min(ell_{j-1}, cap), with ell_{-1} := ell_0.
std::size_t stage_block(const LoweringSchedule& schedule, std::size_t j, std::size_t cap);

/// On each window [ell_j, ell_j + m_j), successive blocks of length b are
/// replaced by their nearest center in canonical_code(b, ceil(c b)); the rest
/// of X is copied. Windows are cut at n. Throws std::invalid_argument for an
/// empty schedule.
TransformResult worst_case_lower(const PrefixSource& x, const LoweringSchedule& schedule, std::size_t block_cap,
                                 std::size_t n);

/// Checkpoints ell_j + k b inside each window, plus the window ends, up to n.
std::vector<std::size_t> schedule_checkpoints(const LoweringSchedule& schedule, std::size_t block_cap,
                                              std::size_t n);

struct LowerBoundCheck {
  bool pass = false;
  /// ratio d - (s - t); absent at s = 1 where the ratio is unbounded.
  std::optional<double> linear_slack;
  /// (s - 1 + H(d)) - (s - t), evaluated only when d >= c.
  std::optional<double> entropy_slack;

  double min_slack() const;
};

/// The two necessary conditions for a dimension-t sequence at distance d from a
/// dimension-s sequence. Pairs with t >= s pass with non-negative slack.
/// Throws std::domain_error for d outside [0, 1/2] or s outside [0, 1].
LowerBoundCheck lower_bound_check(double s, double t, double d);

/// X1 of the thinning construction: B ▷ Y with B Bernoulli(2 H^{-1}(s)),
/// role "thin". Density H^{-1}(s) when Y has density 1/2.
SourcePtr thinned_source(double s, SourcePtr y, std::uint64_t seed);

struct InterpolationRow {
  Rational r;
  DistanceProfile to_ref;
  DistanceProfile to_x0;
  DistanceProfile to_x1;
  std::optional<double> ledger_ratio;
};

/// Mix(X0, X1, r) for each r, profiled against ref, X0 and X1.
std::vector<InterpolationRow> interpolate_family(const PrefixSource& x0, const PrefixSource& x1,
                                                 const std::vector<Rational>& r_grid, const PrefixSource& ref,
                                                 const std::vector<std::size_t>& checkpoints, bool with_ledger);

}  // namespace effdim
