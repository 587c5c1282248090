#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "effdim/hamming.hpp"
#include "effdim/profile.hpp"
#include "effdim/rational.hpp"
#include "effdim/source_spec.hpp"
#include "effdim/streams.hpp"
#include "support.hpp"

using namespace effdim;

namespace {

// b(r) prefix built top-down by interleaving whole prefixes; depth-limited,
// with r given as num/den in exact integers.
std::vector<bool> oracle_b(std::uint64_t num, std::uint64_t den, std::size_t n) {
  if (n == 0) return {};
  if (num == 0) return std::vector<bool>(n, false);
  if (num == den) return std::vector<bool>(n, true);
  std::vector<bool> out(n);
  if (2 * num <= den) {
    const auto odd = oracle_b(2 * num, den, n / 2);
    for (std::size_t j = 0; j < n; ++j) out[j] = j % 2 == 1 && odd[j / 2];
  } else {
    const auto even = oracle_b(2 * num - den, den, (n + 1) / 2);
    for (std::size_t j = 0; j < n; ++j) out[j] = j % 2 == 1 || even[j / 2];
  }
  return out;
}

}  // namespace

TEST_CASE("chunk layout") {
  CHECK(chunk_start(1) == 0);
  CHECK(chunk_start(2) == 1);
  CHECK(chunk_start(5) == 10);
  std::uint64_t j = 1;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    while (chunk_start(j + 1) <= i) ++j;
    CHECK(chunk_of(i) == j);
  }
  for (std::uint64_t k = 1; k < 500; ++k) {
    const auto [a, b] = chunk_bounds(k);
    CHECK(b - a == k);
  }
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/6") == Rational{1, 2});
  CHECK(Rational::parse("0.25") == Rational{1, 4});
  CHECK(Rational::parse("1") == Rational{1, 1});
  CHECK(Rational::make(0, 7) == Rational{0, 1});
  CHECK(Rational::parse("5/16").to_string() == "5/16");
  CHECK_THROWS_AS(Rational::parse("3/2"), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
}

TEST_CASE("b(r) matches the interleaving recursion") {
  test::Gen gen(41);
  for (int i = 0; i < 60; ++i) {
    const std::uint64_t den = gen.uint(1, 200);
    const std::uint64_t num = gen.uint(0, den);
    const Rational r = Rational::make(num, den);
    const auto expected = oracle_b(r.num, r.den, 2000);
    for (std::size_t j = 0; j < expected.size(); ++j) CHECK(b_bit(r, j) == expected[j]);
  }
}

TEST_CASE("b(m/16) has exactly m ones per aligned 16-window") {
  for (std::uint64_t m = 0; m <= 16; ++m) {
    const Rational r = Rational::make(m, 16);
    for (std::uint64_t w = 0; w < 200; ++w) {
      std::uint64_t ones = 0;
      for (std::uint64_t j = 16 * w; j < 16 * (w + 1); ++j) ones += b_bit(r, j);
      CHECK(ones == m);
    }
  }
}

TEST_CASE("sources are deterministic and clones are independent") {
  const SourcePtr u = make_uniform(5);
  SourcePtr copy = u;
  const BitBlock first = copy->read(100);
  CHECK(prefix(*u, 100) == first);
  CHECK(copy->position() == 100);
  CHECK(u->position() == 0);
  copy->restart();
  CHECK(copy->read(100) == first);
  CHECK(prefix(*make_uniform(6), 100) != first);
  CHECK(prefix(*make_const(true), 50).count_ones() == 50);
}

TEST_CASE("bernoulli densities") {
  CHECK(prefix(*make_bernoulli(0.0, 3), 1000).count_ones() == 0);
  CHECK(prefix(*make_bernoulli(1.0, 3), 1000).count_ones() == 1000);
  for (double p : {0.05, 0.110028, 0.3, 0.5}) {
    const double d = density(prefix(*make_bernoulli(p, 17), 200000));
    CHECK(std::abs(d - p) <= 0.005);
  }
  CHECK(prefix(*make_bernoulli(0.3, 1, "a"), 500) != prefix(*make_bernoulli(0.3, 1, "b"), 500));
  CHECK_THROWS_AS(make_bernoulli(1.5, 0), std::domain_error);
}

TEST_CASE("mix copies whole chunks in lockstep") {
  const SourcePtr x0 = make_uniform(1);
  const SourcePtr x1 = make_uniform(2);
  const Rational r = Rational::make(3, 8);
  const BitBlock a = prefix(*x0, 5000);
  const BitBlock b = prefix(*x1, 5000);
  const BitBlock m = prefix(*make_mix(x0, x1, r), 5000);
  for (std::size_t i = 0; i < 5000; ++i) CHECK(m[i] == (b_bit(r, chunk_of(i)) ? b[i] : a[i]));
}

TEST_CASE("thin and xor") {
  test::Gen gen(42);
  for (int i = 0; i < 50; ++i) {
    const BitBlock y = gen.bits(300, 0.4);
    const BitBlock b = gen.bits(300, 0.5);
    const BitBlock t = thin_prefix(y, b);
    std::size_t k = 0;
    for (std::size_t p = 0; p < y.size(); ++p) {
      if (y[p]) {
        CHECK(t[p] == b[k]);
        ++k;
      } else {
        CHECK_FALSE(t[p]);
      }
    }
  }
  CHECK_THROWS_AS(thin_prefix(BitBlock::from_string("111"), BitBlock::from_string("1")), std::out_of_range);
  const SourcePtr x = make_uniform(3);
  const SourcePtr y = make_bernoulli(0.2, 4);
  const BitBlock once = prefix(*make_xor(x, y), 4000);
  CHECK(prefix(*make_xor(make_xor(x, y), y), 4000) == prefix(*x, 4000));
  CHECK(hamming_distance(once, prefix(*x, 4000)) == prefix(*y, 4000).count_ones());
  const SourcePtr thin = thin_by(make_uniform(8), make_bernoulli(0.5, 9));
  CHECK(prefix(*thin, 4000) == thin_prefix(prefix(*make_uniform(8), 4000), prefix(*make_bernoulli(0.5, 9), 4000)));
}

TEST_CASE("materialized sources stop at their horizon") {
  MaterializedSource m(BitBlock::from_string("0110"), "test");
  CHECK(m.horizon() == std::optional<std::size_t>(4));
  CHECK(m.read(4).to_string() == "0110");
  CHECK_THROWS_AS(m.next(), std::out_of_range);
}

TEST_CASE("descriptors round trip through the parser") {
  const std::vector<std::string> texts = {
      "const:value=1",
      "uniform:seed=12",
      "bernoulli:p=0.110028,seed=3",
      "bernoulli:p=0.25,seed=3,role=thin",
      "dyadic:r=3/7",
      "mix:r=1/2,src0=[uniform:seed=1],src1=[const:value=0]",
      "thin:y=[uniform:seed=1],b=[bernoulli:p=0.5,seed=2]",
      "xor:a=[uniform:seed=1],b=[mix:r=1/4,src0=[const:value=1],src1=[uniform:seed=9]]",
      "codeword:s=0.5,nmax=12,base=[uniform:seed=4]",
  };
  for (const std::string& text : texts) {
    const SourcePtr src = parse_source(text);
    CHECK(src->descriptor() == text);
    CHECK(prefix(*parse_source(src->descriptor()), 500) == prefix(*src, 500));
  }
  CHECK_THROWS_AS(parse_source("uniform:seed=1,seed=2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_source("uniform:sed=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_source("nothing:x=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_source("mix:r=1/2,src0=[uniform:seed=1,src1=[const:value=0]"), std::invalid_argument);
}

TEST_CASE("distance profiles") {
  const SourcePtr a = make_uniform(1);
  const SourcePtr b = make_xor(make_uniform(1), make_bernoulli(0.1, 2));
  const auto checkpoints = geometric_checkpoints(100000, 20);
  CHECK(checkpoints.back() == 100000);
  for (std::size_t i = 1; i < checkpoints.size(); ++i) CHECK(checkpoints[i] > checkpoints[i - 1]);
  const DistanceProfile p = distance_profile(*a, *b, checkpoints);
  const BitBlock pa = prefix(*a, 100000);
  const BitBlock pb = prefix(*b, 100000);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const std::size_t n = checkpoints[i];
    CHECK(p.differences[i] == hamming_distance(pa.slice(0, n), pb.slice(0, n)));
  }
  CHECK(std::abs(p.final_distance() - 0.1) <= 0.005);
  CHECK(p.tail_max >= p.final_distance());
  CHECK_THROWS_AS(distance_profile(*a, *b, {5, 5}), std::invalid_argument);
  CHECK(std::abs(hoeffding_tolerance(0.1, 100) - 0.270670566) <= 1e-9);
  CHECK(chunk_checkpoints(10) == std::vector<std::size_t>{1, 3, 6, 10});
}
