#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "effdim/ball_rank.hpp"
#include "effdim/bitblock.hpp"
#include "effdim/hamming.hpp"
#include "effdim/io.hpp"
#include "effdim/prefix_code.hpp"
#include "effdim/prf.hpp"
#include "support.hpp"

using namespace effdim;

namespace {

// Pascal's triangle in 64-bit arithmetic, valid for n <= 60.
std::uint64_t oracle_volume(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (std::size_t k = 1; k <= i; ++k) c[i][k] = c[i - 1][k - 1] + (k < i ? c[i - 1][k] : 0);
  }
  std::uint64_t v = 0;
  for (std::size_t k = 0; k <= std::min(n, r); ++k) v += c[n][k];
  return v;
}

}  // namespace

TEST_CASE("bitblock round trips") {
  const BitBlock b = BitBlock::from_string("1011001");
  CHECK(b.size() == 7);
  CHECK(b.to_string() == "1011001");
  CHECK(b[0]);
  CHECK_FALSE(b[1]);
  CHECK(b.count_ones() == 4);
  CHECK(b.to_word() == 0b1011001u);
  CHECK(BitBlock::from_word(7, 0b1011001u) == b);
  CHECK(b.slice(2, 3).to_string() == "110");
  CHECK_THROWS_AS(BitBlock::from_string("10x"), std::invalid_argument);
  CHECK_THROWS_AS(b.at(7), std::out_of_range);

  test::Gen gen(21);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = gen.uint(0, 200);
    const BitBlock x = gen.bits(n);
    CHECK(BitBlock::from_string(x.to_string()) == x);
    const std::size_t cut = gen.uint(0, n);
    BitBlock joined = x.slice(0, cut);
    joined.append(x.slice(cut, n - cut));
    CHECK(joined == x);
  }
}

TEST_CASE("word order matches lexicographic order") {
  test::Gen gen(22);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = gen.uint(1, 64);
    const BitBlock a = gen.bits(n);
    const BitBlock b = gen.bits(n);
    CHECK((a.to_word() < b.to_word()) == (a.to_string() < b.to_string()));
    CHECK(((a <=> b) < 0) == (a.to_string() < b.to_string()));
  }
}

TEST_CASE("hamming distance is a metric") {
  test::Gen gen(23);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = gen.uint(0, 150);
    const BitBlock a = gen.bits(n);
    const BitBlock b = gen.bits(n);
    const BitBlock c = gen.bits(n);
    std::size_t naive = 0;
    for (std::size_t k = 0; k < n; ++k) naive += a[k] != b[k];
    CHECK(hamming_distance(a, b) == naive);
    CHECK(hamming_distance(a, a) == 0);
    CHECK(hamming_distance(a, b) == hamming_distance(b, a));
    CHECK(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
  }
  CHECK_THROWS_AS(hamming_distance(BitBlock(3), BitBlock(4)), std::invalid_argument);
}

TEST_CASE("ball volume against Pascal's triangle") {
  for (std::size_t n = 0; n <= 60; ++n) {
    for (std::size_t r = 0; r <= n; ++r) CHECK(ball_volume(n, r).value == oracle_volume(n, r));
  }
  CHECK(ball_volume(5, 2).value == 16);
  CHECK(ball_volume(8, 2).value == 37);
  CHECK(ball_volume(200, 200).value == BigInt(1) << 200);
  CHECK_THROWS_AS(ball_volume(7, 9), std::invalid_argument);
}

TEST_CASE("log volume sits within 2 log2(n+1) below H(r/n) n") {
  double tightest = 0.0;
  for (std::size_t n = 1; n <= 24; ++n) {
    for (std::size_t r = 1; 2 * r <= n; ++r) {
      const double p = static_cast<double>(r) / static_cast<double>(n);
      const double h = (-p * std::log2(p) - (1 - p) * std::log2(1 - p)) * static_cast<double>(n);
      const double lv = std::log2(static_cast<double>(oracle_volume(n, r)));
      CHECK(std::abs(ball_volume(n, r).log2() - lv) <= 1e-9);
      CHECK(lv <= h + 1e-9);
      CHECK(lv >= h - 2.0 * std::log2(static_cast<double>(n) + 1.0));
      tightest = std::max(tightest, (h - lv) / std::log2(static_cast<double>(n) + 1.0));
    }
  }
  MESSAGE("tightest constant c in H(r/n)n - c log2(n+1): " << tightest);
  CHECK(tightest <= 2.0);
}

TEST_CASE("ball enumeration") {
  test::Gen gen(24);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = gen.uint(1, 10);
    const std::size_t r = gen.uint(0, n);
    const BitBlock center = gen.bits(n);
    const auto ball = enumerate_ball(center, r);
    CHECK(ball.size() == oracle_volume(n, r));
    std::set<std::string> distinct;
    for (const BitBlock& x : ball) {
      CHECK(hamming_distance(x, center) <= r);
      distinct.insert(x.to_string());
    }
    CHECK(distinct.size() == ball.size());
    std::size_t visited = 0;
    for_each_in_ball(n, center.to_word(), r, [&](Word w) {
      CHECK(std::popcount(w ^ center.to_word()) <= static_cast<int>(r));
      ++visited;
    });
    CHECK(visited == ball.size());
  }
}

TEST_CASE("index width") {
  CHECK(index_width(1) == 0);
  CHECK(index_width(2) == 1);
  CHECK(index_width(37) == 6);
  CHECK(index_width(468) == 9);
  CHECK(index_width(BigInt(1) << 100) == 100);
  CHECK(index_width((BigInt(1) << 100) + 1) == 101);
}

TEST_CASE("counter rng is a pure function of seed, role and counter") {
  CounterRng a(7, "uniform");
  CounterRng b(7, "uniform");
  CounterRng c(7, "bernoulli");
  CounterRng d(8, "uniform");
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x == a.at(static_cast<std::uint64_t>(i)));
    CHECK(x != c.next());
    CHECK(x != d.next());
  }
  test::Gen gen(25);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t bound = gen.uint(1, 1000);
    CHECK(a.below(bound) < bound);
  }
  const auto sample = sample_without_replacement(a, 50, 20);
  CHECK(sample.size() == 20);
  CHECK(std::set<std::uint64_t>(sample.begin(), sample.end()).size() == 20);
  for (auto v : sample) CHECK(v < 50);
  CHECK_THROWS(sample_without_replacement(a, 5, 6));
}

TEST_CASE("gamma code lengths and round trips") {
  for (std::uint64_t k = 1; k < 5000; ++k) {
    CHECK(gamma_length(k) == 2 * static_cast<std::size_t>(std::bit_width(k) - 1) + 1);
  }
  test::Gen gen(26);
  BitWriter w;
  std::vector<std::uint64_t> values;
  for (int i = 0; i < 300; ++i) {
    values.push_back(gen.uint(1, 1ull << gen.uint(0, 62)));
    w.put_gamma(values.back());
    w.put_uint(values.back() & 0xff, 8);
  }
  const BitBlock bits = w.take();
  BitReader r(bits);
  for (auto v : values) {
    CHECK(r.get_gamma() == v);
    CHECK(r.get_uint(8) == (v & 0xff));
  }
  CHECK(r.at_end());
  CHECK_THROWS(r.get());
}

TEST_CASE("ball rank orders by weight then lexicographically") {
  for (std::size_t n = 1; n <= 10; ++n) {
    std::vector<BitBlock> all;
    for (Word w = 0; w < (Word{1} << n); ++w) all.push_back(BitBlock::from_word(n, w));
    std::sort(all.begin(), all.end(), [](const BitBlock& a, const BitBlock& b) {
      if (a.count_ones() != b.count_ones()) return a.count_ones() < b.count_ones();
      return a.to_string() < b.to_string();
    });
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(ball_rank(all[i]) == i);
      CHECK(ball_unrank(n, i) == all[i]);
    }
  }
  test::Gen gen(27);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = gen.uint(60, 300);
    const BitBlock x = gen.bits(n, 0.1);
    const BigInt rank = ball_rank(x);
    CHECK(rank < ball_volume(n, x.count_ones()).value);
    CHECK(ball_unrank(n, rank) == x);
  }
}

TEST_CASE("packed and text encodings") {
  test::Gen gen(28);
  for (int i = 0; i < 100; ++i) {
    const BitBlock x = gen.bits(gen.uint(0, 300));
    CHECK(unpack_bits(pack_bits(x)) == x);
    CHECK(bits_to_text(x) == x.to_string() + "\n");
  }
  CHECK_THROWS_AS(unpack_bits("abc"), std::invalid_argument);
  std::string truncated = pack_bits(gen.bits(20));
  truncated.pop_back();
  CHECK_THROWS_AS(unpack_bits(truncated), std::invalid_argument);
}

TEST_CASE("atomic writes leave no temporaries") {
  test::TempDir dir("io");
  const auto path = dir.path() / "sub" / "file.txt";
  write_atomically(path, "first");
  write_atomically(path, "second");
  CHECK(read_file(path) == "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(path.parent_path())) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS_AS(read_file(dir.path() / "missing"), std::runtime_error);

  const auto link = dir.path() / "link.txt";
  std::filesystem::create_symlink(path, link);
  write_atomically(link, "third");
  CHECK(std::filesystem::is_symlink(link));
  CHECK(read_file(path) == "third");
  write_atomically("/dev/null", "discarded");
  CHECK(std::filesystem::is_character_file("/dev/null"));
}
