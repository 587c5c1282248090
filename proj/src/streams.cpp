#include "effdim/streams.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace effdim {

std::uint64_t chunk_of(std::uint64_t i) noexcept {
  // Largest j with j(j-1)/2 <= i.
  auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(i))) / 2.0);
  while (j > 1 && chunk_start(j) > i) --j;
  while (chunk_start(j + 1) <= i) ++j;
  return std::max<std::uint64_t>(j, 1);
}

bool b_bit(const Rational& r, std::uint64_t j) noexcept {
  std::uint64_t num = r.num;
  const std::uint64_t den = r.den;
  while (true) {
    if (num == 0) return false;
    if (num == den) return true;
    if (2 * num <= den) {
      // 0^w (+) b(2r): even positions are 0.
      if (j % 2 == 0) return false;
      j /= 2;
      num *= 2;
    } else {
      // b(2r-1) (+) 1^w: odd positions are 1.
      if (j % 2 == 1) return true;
      j /= 2;
      num = 2 * num - den;
    }
  }
}

BitBlock PrefixSource::read(std::size_t count) {
  BitBlock out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(next());
  return out;
}

void PrefixSource::skip(std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) next();
}

BitBlock prefix(const PrefixSource& src, std::size_t n) {
  auto copy = src.clone();
  copy->restart();
  return copy->read(n);
}

std::string format_double(double x) { return fmt::format("{}", x); }

std::string ConstSource::descriptor() const { return fmt::format("const:value={}", value_ ? 1 : 0); }

std::string UniformSource::descriptor() const { return fmt::format("uniform:seed={}", seed_); }

bool UniformSource::produce() {
  const std::uint64_t i = position();
  return (rng_.at(i >> 6) >> (i & 63)) & 1u;
}

BernoulliSource::BernoulliSource(double p, std::uint64_t seed, std::string role)
    : p_(p), threshold_(p * 9007199254740992.0), seed_(seed), role_(std::move(role)), rng_(seed, role_) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error(fmt::format("bernoulli p={} outside [0, 1]", p));
}

std::string BernoulliSource::descriptor() const {
  if (role_ == "bernoulli") return fmt::format("bernoulli:p={},seed={}", format_double(p_), seed_);
  return fmt::format("bernoulli:p={},seed={},role={}", format_double(p_), seed_, role_);
}

bool BernoulliSource::produce() {
  const auto u = static_cast<double>(rng_.at(position()) >> 11);
  return u < threshold_;
}

std::string DyadicSource::descriptor() const { return fmt::format("dyadic:r={}", r_.to_string()); }

MixSource::MixSource(SourcePtr src0, SourcePtr src1, Rational r)
    : src0_(std::move(src0)), src1_(std::move(src1)), r_(r) {
  reset();
}

std::string MixSource::descriptor() const {
  return fmt::format("mix:r={},src0=[{}],src1=[{}]", r_.to_string(), src0_->descriptor(), src1_->descriptor());
}

void MixSource::reset() {
  src0_->restart();
  src1_->restart();
  chunk_ = 1;
  chunk_end_ = chunk_start(2);
  pick_ = b_bit(r_, 1);
}

bool MixSource::produce() {
  if (position() >= chunk_end_) {
    ++chunk_;
    chunk_end_ = chunk_start(chunk_ + 1);
    pick_ = b_bit(r_, chunk_);
  }
  const bool b0 = src0_->next();
  const bool b1 = src1_->next();
  return pick_ ? b1 : b0;
}

std::vector<CodedSpan> MixSource::coded_layout(std::size_t n) const {
  std::vector<CodedSpan> out;
  for (int side = 0; side < 2; ++side) {
    for (const CodedSpan& span : (side == 0 ? src0_ : src1_)->coded_layout(n)) {
      const std::uint64_t j = chunk_of(span.start);
      if (span.start + span.length > chunk_start(j + 1)) continue;  // straddles a chunk boundary
      if (b_bit(r_, j) == (side == 1)) out.push_back(span);
    }
  }
  std::sort(out.begin(), out.end(), [](const CodedSpan& a, const CodedSpan& b) { return a.start < b.start; });
  return out;
}

namespace {

std::optional<std::size_t> min_horizon(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

std::optional<std::size_t> MixSource::horizon() const { return min_horizon(src0_->horizon(), src1_->horizon()); }

std::string ThinSource::descriptor() const {
  return fmt::format("thin:y=[{}],b=[{}]", y_->descriptor(), b_->descriptor());
}

std::string XorSource::descriptor() const {
  return fmt::format("xor:a=[{}],b=[{}]", a_->descriptor(), b_->descriptor());
}

std::optional<std::size_t> XorSource::horizon() const { return min_horizon(a_->horizon(), b_->horizon()); }

MaterializedSource::MaterializedSource(BitBlock bits, std::string descriptor, std::vector<CodedSpan> layout)
    : bits_(std::move(bits)), descriptor_(std::move(descriptor)), layout_(std::move(layout)) {}

std::vector<CodedSpan> MaterializedSource::coded_layout(std::size_t n) const {
  std::vector<CodedSpan> out;
  for (const CodedSpan& span : layout_) {
    if (span.start < n) out.push_back(span);
  }
  return out;
}

bool MaterializedSource::produce() {
  const std::size_t i = position();
  if (i >= bits_.size()) {
    throw std::out_of_range(fmt::format("{}: read at {} beyond materialized horizon {}", descriptor_, i, bits_.size()));
  }
  return bits_[i];
}

SourcePtr make_const(bool value) { return std::make_unique<ConstSource>(value); }
SourcePtr make_uniform(std::uint64_t seed) { return std::make_unique<UniformSource>(seed); }
SourcePtr make_bernoulli(double p, std::uint64_t seed, std::string role) {
  return std::make_unique<BernoulliSource>(p, seed, std::move(role));
}
SourcePtr make_dyadic(Rational r) { return std::make_unique<DyadicSource>(r); }
SourcePtr make_mix(SourcePtr src0, SourcePtr src1, Rational r) {
  return std::make_unique<MixSource>(std::move(src0), std::move(src1), r);
}
SourcePtr thin_by(SourcePtr y, SourcePtr b) { return std::make_unique<ThinSource>(std::move(y), std::move(b)); }
SourcePtr make_xor(SourcePtr a, SourcePtr b) { return std::make_unique<XorSource>(std::move(a), std::move(b)); }

BitBlock thin_prefix(const BitBlock& y, const BitBlock& b) {
  const std::size_t needed = y.count_ones();
  if (needed > b.size()) {
    throw std::out_of_range(fmt::format("thin_prefix: Y has {} ones but B supplies only {} bits (short by {})", needed,
                                        b.size(), needed - b.size()));
  }
  BitBlock out(y.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i]) {
      if (b[k]) out.set(i, true);
      ++k;
    }
  }
  return out;
}

}  // namespace effdim
