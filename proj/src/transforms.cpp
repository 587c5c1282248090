#include "effdim/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "effdim/covercode.hpp"
#include "effdim/entropy.hpp"
#include "effdim/ledger.hpp"
#include "effdim/parallel.hpp"

namespace effdim {

namespace {

/// ceil that ignores a 1e-9 excess from rounding.
std::size_t ceil_count(double x) { return static_cast<std::size_t>(std::max(0.0, std::ceil(x - 1e-9))); }

ChangeLog log_from(const BitBlock& input, const BitBlock& output, std::vector<ChangeLog::Block> blocks) {
  ChangeLog log;
  log.n = output.size();
  for (std::size_t i = 0; i < output.size(); ++i) {
    if (input[i] != output[i]) log.positions.push_back(i);
  }
  log.blocks = std::move(blocks);
  return log;
}

}  // namespace

double ChangeLog::density_at(std::size_t m) const {
  if (m == 0) return 0.0;
  const auto count = std::lower_bound(positions.begin(), positions.end(), m) - positions.begin();
  return static_cast<double>(count) / static_cast<double>(m);
}

ChangeLog diff_log(const PrefixSource& input, const PrefixSource& output, std::size_t n) {
  return log_from(prefix(input, n), prefix(output, n), {});
}

std::string change_positions_csv(const ChangeLog& log) {
  std::string out = "position\n";
  for (std::size_t p : log.positions) out += fmt::format("{}\n", p);
  return out;
}

std::string change_density_csv(const ChangeLog& log, const std::vector<std::size_t>& checkpoints) {
  std::string out = "n,changes,density\n";
  for (std::size_t m : checkpoints) {
    const auto count = std::lower_bound(log.positions.begin(), log.positions.end(), m) - log.positions.begin();
    out += fmt::format("{},{},{:.6g}\n", m, count, log.density_at(m));
  }
  return out;
}

SourcePtr raise_dimension(SourcePtr x, double s, double t, std::uint64_t seed) {
  if (t < s) throw std::domain_error(fmt::format("raise_dimension: t={} is below s={}", t, s));
  DimPair::checked(s, t);
  return make_xor(std::move(x), make_bernoulli(entropy_inv(t - s), seed, "raise"));
}

TransformResult lower_bernoulli(const PrefixSource& x, double s, double t, std::size_t block, std::size_t n,
                                std::uint64_t seed) {
  DimPair::checked(s, t);
  if (t > s) throw std::domain_error(fmt::format("lower_bernoulli: t={} exceeds s={}", t, s));
  if (block == 0) throw std::invalid_argument("lower_bernoulli: block length must be positive");
  if (block > kCoveringCap) {
    throw std::length_error(fmt::format("lower_bernoulli: block {} exceeds the exhaustive cap {}", block, kCoveringCap));
  }
  const BitBlock input = prefix(x, n);
  const double rate = entropy_inv(s - t);

  struct Job {
    std::size_t start;
    std::size_t length;
    std::size_t q;
    std::size_t radius;
  };
  std::vector<Job> jobs;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, BallCover> covers;
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t len = std::min(block, n - start);
    const std::size_t radius = std::min(len, ceil_count(rate * static_cast<double>(len)));
    const std::size_t q = input.slice(start, len).count_ones();
    jobs.push_back({start, len, q, radius});
    if (radius > 0) covers.try_emplace({len, q, radius});
  }
  for (auto& [key, cover] : covers) {
    const auto [len, q, radius] = key;
    cover = ball_cover(len, q, radius, seed);
  }

  std::vector<Word> replaced(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    const Word word = input.slice(job.start, job.length).to_word();
    replaced[i] = job.radius == 0 ? word : nearest_in(covers.at({job.length, job.q, job.radius}).centers, word).first;
  });

  BitBlock output;
  std::vector<ChangeLog::Block> blocks;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    const BitBlock out_block = BitBlock::from_word(job.length, replaced[i]);
    blocks.push_back({job.start, job.length, job.radius,
                      static_cast<std::size_t>(word_distance(replaced[i], input.slice(job.start, job.length).to_word()))});
    output.append(out_block);
  }
  ChangeLog log = log_from(input, output, std::move(blocks));
  const std::string descriptor = fmt::format("lower-bernoulli:s={},t={},b={},seed={},n={},x=[{}]", format_double(s),
                                             format_double(t), block, seed, n, x.descriptor());
  return {std::make_unique<MaterializedSource>(std::move(output), descriptor), std::move(log)};
}

LoweringSchedule lowering_schedule(double s, double t, std::size_t ell1, ScheduleMode mode, std::size_t horizon,
                                   double growth) {
  DimPair::checked(s, t);
  const CriticalProfile profile = critical_profile(s);
  if (!(t > profile.t_star && t < s)) {
    throw std::domain_error(fmt::format(
        "lowering_schedule: worst-case lowering requires 1-H(c) < t < s, here 1-H(c)={:.6g}, t={}, s={}", profile.t_star,
        t, s));
  }
  if (ell1 == 0) throw std::domain_error("lowering_schedule: ell_1 must be positive");
  if (mode == ScheduleMode::relaxed && !(growth >= 2.0)) {
    throw std::domain_error("lowering_schedule: relaxed growth factor must be at least 2");
  }
  LoweringSchedule out;
  out.s = s;
  out.t = t;
  out.c = profile.c;
  out.t_star = profile.t_star;
  out.ratio = profile.ratio.value_or(0.0);
  out.mode = mode;
  out.growth = growth;
  const double factor = out.window_factor();
  std::size_t ell = ell1;
  while (true) {
    const std::size_t m = ceil_count(factor * static_cast<double>(ell));
    if (ell + m > horizon) break;
    out.ell.push_back(ell);
    out.m.push_back(m);
    double next = 0.0;
    if (mode == ScheduleMode::strict) {
      const double root = std::ceil(static_cast<double>(ell) * (1.0 + factor) - 1e-9);
      next = root * root + 1.0;
    } else {
      next = std::ceil(static_cast<double>(ell + m) * growth - 1e-9);
    }
    if (next > static_cast<double>(horizon)) break;
    ell = static_cast<std::size_t>(next);
  }
  return out;
}

nlohmann::json schedule_json(const LoweringSchedule& schedule) {
  nlohmann::json stages = nlohmann::json::array();
  for (std::size_t j = 0; j < schedule.ell.size(); ++j) {
    stages.push_back({{"stage", j + 1}, {"ell", schedule.ell[j]}, {"m", schedule.m[j]}});
  }
  nlohmann::json out{{"s", schedule.s},
                     {"t", schedule.t},
                     {"c", schedule.c},
                     {"t_star", schedule.t_star},
                     {"ratio", schedule.ratio},
                     {"mode", schedule.mode == ScheduleMode::strict ? "strict" : "relaxed"},
                     {"stages", stages}};
  if (schedule.mode == ScheduleMode::relaxed) out["growth"] = schedule.growth;
  return out;
}

std::size_t stage_block(const LoweringSchedule& schedule, std::size_t j, std::size_t cap) {
  const std::size_t previous = j == 0 ? schedule.ell.at(0) : schedule.ell.at(j - 1);
  return std::max<std::size_t>(1, std::min(previous, cap));
}

TransformResult worst_case_lower(const PrefixSource& x, const LoweringSchedule& schedule, std::size_t block_cap,
                                 std::size_t n) {
  if (schedule.ell.empty()) throw std::invalid_argument("worst_case_lower: schedule has no stages");
  if (block_cap == 0 || block_cap > kDistributionCap) {
    throw std::length_error(fmt::format("worst_case_lower: block cap {} outside [1, {}]", block_cap, kDistributionCap));
  }
  const BitBlock input = prefix(x, n);
  BitBlock output = input;

  struct Job {
    std::size_t start;
    std::size_t length;
    std::size_t radius;
  };
  std::vector<Job> jobs;
  std::vector<std::pair<std::size_t, std::size_t>> windows;
  for (std::size_t j = 0; j < schedule.ell.size(); ++j) {
    const std::size_t begin = schedule.ell[j];
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + schedule.m[j]);
    windows.emplace_back(begin, end);
    const std::size_t b = stage_block(schedule, j, block_cap);
    for (std::size_t start = begin; start < end; start += b) {
      const std::size_t len = std::min(b, end - start);
      const std::size_t radius = std::min(len, std::max<std::size_t>(1, ceil_count(schedule.c * static_cast<double>(len))));
      jobs.push_back({start, len, radius});
    }
  }
  // Materialize the tables up front so the parallel pass only reads them.
  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const NearestCenterTable>> tables;
  for (const Job& job : jobs) {
    auto& slot = tables[{job.length, job.radius}];
    if (!slot) slot = canonical_table(job.length, job.radius);
  }
  std::vector<Word> replaced(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    replaced[i] = tables.at({job.length, job.radius})->center(input.slice(job.start, job.length).to_word());
  });

  std::vector<ChangeLog::Block> blocks;
  std::vector<CodedSpan> layout;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    const Word before = input.slice(job.start, job.length).to_word();
    const BitBlock after = BitBlock::from_word(job.length, replaced[i]);
    for (std::size_t k = 0; k < job.length; ++k) output.set(job.start + k, after[k]);
    blocks.push_back({job.start, job.length, job.radius,
                      static_cast<std::size_t>(word_distance(before, replaced[i]))});
    layout.push_back({job.start, job.length, job.radius});
  }
  for (const CodedSpan& span : x.coded_layout(n)) {
    const std::size_t end = span.start + span.length;
    if (end > n) continue;
    const bool overlaps = std::any_of(windows.begin(), windows.end(), [&](const auto& w) {
      return span.start < w.second && w.first < end;
    });
    if (!overlaps) layout.push_back(span);
  }
  std::sort(layout.begin(), layout.end(), [](const CodedSpan& a, const CodedSpan& b) { return a.start < b.start; });

  ChangeLog log = log_from(input, output, std::move(blocks));
  const std::string descriptor =
      fmt::format("lower-worst:s={},t={},ell1={},mode={},cap={},n={},x=[{}]", format_double(schedule.s),
                  format_double(schedule.t), schedule.ell.front(),
                  schedule.mode == ScheduleMode::strict ? "strict" : "relaxed", block_cap, n,
                  x.descriptor());
  return {std::make_unique<MaterializedSource>(std::move(output), descriptor, std::move(layout)), std::move(log)};
}

std::vector<std::size_t> schedule_checkpoints(const LoweringSchedule& schedule, std::size_t block_cap,
                                              std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < schedule.ell.size(); ++j) {
    const std::size_t begin = schedule.ell[j];
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + schedule.m[j]);
    const std::size_t b = stage_block(schedule, j, block_cap);
    for (std::size_t p = begin; p < end; p += b) out.push_back(p);
    out.push_back(end);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), std::size_t{0}), out.end());
  return out;
}

double LowerBoundCheck::min_slack() const {
  double out = std::numeric_limits<double>::infinity();
  if (linear_slack) out = std::min(out, *linear_slack);
  if (entropy_slack) out = std::min(out, *entropy_slack);
  return out;
}

LowerBoundCheck lower_bound_check(double s, double t, double d) {
  if (!(d >= 0.0 && d <= 0.5)) throw std::domain_error(fmt::format("lower_bound_check: d={} outside [0, 1/2]", d));
  DimPair::checked(s, t);
  const CriticalProfile profile = critical_profile(s);
  const double drop = s - t;
  LowerBoundCheck out;
  if (profile.ratio) out.linear_slack = *profile.ratio * d - drop;
  if (d >= profile.c) out.entropy_slack = (s - 1.0 + binary_entropy(d)) - drop;
  constexpr double kTolerance = 1e-12;
  out.pass = (!out.linear_slack || *out.linear_slack >= -kTolerance) &&
             (!out.entropy_slack || *out.entropy_slack >= -kTolerance);
  return out;
}

SourcePtr thinned_source(double s, SourcePtr y, std::uint64_t seed) {
  const double p = entropy_inv(s);
  return thin_by(std::move(y), make_bernoulli(std::min(1.0, 2.0 * p), seed, "thin"));
}

std::vector<InterpolationRow> interpolate_family(const PrefixSource& x0, const PrefixSource& x1,
                                                 const std::vector<Rational>& r_grid, const PrefixSource& ref,
                                                 const std::vector<std::size_t>& checkpoints, bool with_ledger) {
  std::vector<InterpolationRow> rows;
  for (const Rational& r : r_grid) {
    const SourcePtr mixed = make_mix(x0.clone(), x1.clone(), r);
    InterpolationRow row;
    row.r = r;
    row.to_ref = distance_profile(*mixed, ref, checkpoints);
    row.to_x0 = distance_profile(*mixed, x0, checkpoints);
    row.to_x1 = distance_profile(*mixed, x1, checkpoints);
    if (with_ledger && !checkpoints.empty()) row.ledger_ratio = description_ledger(*mixed, checkpoints.back()).ratio();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace effdim
