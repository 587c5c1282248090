#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "effdim/codeword.hpp"
#include "effdim/covercode.hpp"
#include "effdim/entropy.hpp"
#include "effdim/hamming.hpp"
#include "effdim/ledger.hpp"
#include "effdim/transforms.hpp"
#include "support.hpp"

using namespace effdim;

TEST_CASE("raising flips at rate H^-1(t - s) and is an involution") {
  const SourcePtr x = make_bernoulli(entropy_inv(0.5), 3);
  const SourcePtr y = raise_dimension(x, 0.5, 1.0, 11);
  const std::size_t n = 200000;
  const ChangeLog log = diff_log(*x, *y, n);
  CHECK(std::abs(log.density_at(n) - entropy_inv(0.5)) <= 0.005);
  CHECK(prefix(*raise_dimension(y, 0.5, 1.0, 11), n) == prefix(*x, n));
  CHECK(prefix(*raise_dimension(x, 0.5, 0.5, 11), 1000) == prefix(*x, 1000));
  CHECK_THROWS_AS(raise_dimension(x, 0.5, 0.4, 1), std::domain_error);
}

TEST_CASE("change logs") {
  const MaterializedSource a(BitBlock::from_string("0000000000"), "a");
  const MaterializedSource b(BitBlock::from_string("0100000011"), "b");
  const ChangeLog log = diff_log(a, b, 10);
  CHECK(log.positions == std::vector<std::size_t>{1, 8, 9});
  CHECK(log.density_at(5) == doctest::Approx(0.2));
  CHECK(log.density_at(10) == doctest::Approx(0.3));
  CHECK(change_positions_csv(log) == "position\n1\n8\n9\n");
  CHECK(change_density_csv(log, {5, 10}).rfind("n,changes,density\n5,1,0.2\n10,3,0.3\n", 0) == 0);
}

TEST_CASE("Bernoulli lowering stays within the block radius") {
  const SourcePtr x = make_bernoulli(entropy_inv(0.5), 5);
  const std::size_t n = 20000;
  const TransformResult result = lower_bernoulli(*x, 0.5, 0.2, 12, n, 9);
  const BitBlock in = prefix(*x, n);
  const BitBlock out = prefix(*result.output, n);
  for (const auto& block : result.log.blocks) {
    CHECK(block.radius == std::min<std::size_t>(block.length, static_cast<std::size_t>(std::ceil(
                                                                  entropy_inv(0.3) * block.length - 1e-9))));
    CHECK(block.changes <= block.radius);
    CHECK(hamming_distance(in.slice(block.start, block.length), out.slice(block.start, block.length)) ==
          block.changes);
    const std::size_t q = in.slice(block.start, block.length).count_ones();
    if (block.radius > 0 && block.length == 12) {
      const BallCover cover = ball_cover(12, q, block.radius, 9);
      const Word w = out.slice(block.start, block.length).to_word();
      CHECK(std::binary_search(cover.centers.begin(), cover.centers.end(), w));
    }
  }
  CHECK(hamming_distance(in, out) == result.log.positions.size());
  const TransformResult same = lower_bernoulli(*x, 0.5, 0.5, 12, 1000, 9);
  CHECK(same.log.positions.empty());
  CHECK_THROWS_AS(lower_bernoulli(*x, 0.5, 0.6, 12, 100, 9), std::domain_error);
  CHECK_THROWS_AS(lower_bernoulli(*x, 0.5, 0.2, 17, 100, 9), std::length_error);
  CHECK_THROWS_AS(result.output->clone()->read(n + 1), std::out_of_range);
}

TEST_CASE("lowering schedules") {
  const LoweringSchedule relaxed = lowering_schedule(0.5, 0.3, 100, ScheduleMode::relaxed, 1000000, 4.0);
  REQUIRE(relaxed.ell.size() >= 3);
  CHECK(relaxed.ell[0] == 100);
  CHECK(relaxed.m[0] == 116);
  CHECK(std::abs(relaxed.window_factor() - 0.2 / (0.3 - critical_profile(0.5).t_star)) <= 1e-12);
  for (std::size_t j = 0; j < relaxed.ell.size(); ++j) {
    CHECK(relaxed.m[j] == static_cast<std::size_t>(std::ceil(relaxed.window_factor() * relaxed.ell[j] - 1e-9)));
    CHECK(relaxed.ell[j] + relaxed.m[j] <= 1000000);
    if (j > 0) CHECK(relaxed.ell[j] == static_cast<std::size_t>(std::ceil((relaxed.ell[j - 1] + relaxed.m[j - 1]) * 4.0)));
  }
  const LoweringSchedule strict = lowering_schedule(0.5, 0.3, 10, ScheduleMode::strict, 1000000);
  REQUIRE(strict.ell.size() >= 2);
  CHECK(strict.m[0] == 12);
  CHECK(strict.ell[1] == 485);
  CHECK(strict.ell[1] > (strict.ell[0] + strict.m[0]) * (strict.ell[0] + strict.m[0]));
  CHECK(stage_block(relaxed, 0, 12) == 12);
  CHECK(stage_block(lowering_schedule(0.5, 0.3, 5, ScheduleMode::relaxed, 100000), 0, 12) == 5);
  CHECK_THROWS_AS(lowering_schedule(0.5, 0.1, 100, ScheduleMode::relaxed, 1000), std::domain_error);
  CHECK_THROWS_AS(lowering_schedule(0.5, 0.3, 100, ScheduleMode::relaxed, 1000, 1.5), std::domain_error);
  const auto json = schedule_json(relaxed);
  CHECK(json["stages"].size() == relaxed.ell.size());
  CHECK(json["mode"] == "relaxed");
}

TEST_CASE("worst-case lowering changes only the stage windows") {
  const SourcePtr x = codeword_source({0.5, make_uniform(4), kDefaultChunkCap});
  const std::size_t n = 30000;
  const LoweringSchedule schedule = lowering_schedule(0.5, 0.3, 100, ScheduleMode::relaxed, n, 4.0);
  const TransformResult result = worst_case_lower(*x, schedule, 12, n);
  for (std::size_t p : result.log.positions) {
    bool inside = false;
    for (std::size_t j = 0; j < schedule.ell.size(); ++j) {
      inside = inside || (p >= schedule.ell[j] && p < schedule.ell[j] + schedule.m[j]);
    }
    CHECK(inside);
  }
  const double c = critical_profile(0.5).c;
  for (const auto& block : result.log.blocks) {
    CHECK(block.changes <= block.radius);
    CHECK(block.radius == std::min<std::size_t>(
                              block.length, std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(c * block.length - 1e-9)))));
  }
  const EncodedPrefix enc = encode_prefix(*result.output, n);
  CHECK(decode_prefix(enc.stream) == prefix(*result.output, n));
  const auto checkpoints = schedule_checkpoints(schedule, 12, n);
  CHECK(std::is_sorted(checkpoints.begin(), checkpoints.end()));
  for (std::size_t m : checkpoints) CHECK(result.log.density_at(m) <= worst_distance(0.5, 0.3) + 0.02);
  CHECK_THROWS_AS(worst_case_lower(*x, schedule, 15, n), std::length_error);
}

TEST_CASE("lower bound check") {
  CHECK(lower_bound_check(0.5, 0.372845, 0.1).pass);
  CHECK_FALSE(lower_bound_check(0.5, 0.372844, 0.1).pass);
  CHECK(lower_bound_check(0.5, 0.02905, 0.4).pass);
  CHECK_FALSE(lower_bound_check(0.5, 0.02904, 0.4).pass);
  CHECK(std::abs(*lower_bound_check(0.5, 0.3, 0.4).entropy_slack - (0.3 - (1.0 - binary_entropy(0.4)))) <= 1e-12);
  CHECK(std::abs(1.0 - binary_entropy(0.4) - 0.029049405546) <= 1e-11);
  CHECK(lower_bound_check(0.5, 0.7, 0.0).pass);
  CHECK_THROWS_AS(lower_bound_check(0.5, 0.3, 0.6), std::domain_error);
}

TEST_CASE("thinning and interpolation") {
  const SourcePtr thin = thinned_source(0.5, make_uniform(2), 3);
  CHECK(std::abs(density(prefix(*thin, 200000)) - entropy_inv(0.5)) <= 0.005);
  const SourcePtr x0 = make_uniform(1);
  const SourcePtr x1 = make_uniform(2);
  const std::vector<Rational> grid{Rational::make(0, 1), Rational::make(1, 2), Rational::make(1, 1)};
  const auto rows = interpolate_family(*x0, *x1, grid, *x0, {1000, 10000}, true);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].to_x0.final_distance() == 0.0);
  CHECK(rows[2].to_x1.final_distance() == 0.0);
  CHECK(std::abs(rows[1].to_x0.final_distance() - 0.25) <= 0.03);
  CHECK(rows[1].ledger_ratio.has_value());
}
