#pragma once

#include <cstddef>
#include <cstdint>
#include <concepts>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effdim/bitblock.hpp"
#include "effdim/prf.hpp"
#include "effdim/rational.hpp"

namespace effdim {

// Chunk layout: n_j = j(j-1)/2 and I_j = [n_j, n_{j+1}), so |I_j| = j and I_0 is empty.

constexpr std::uint64_t chunk_start(std::uint64_t j) noexcept { return j * (j - (j > 0 ? 1 : 0)) / 2; }
constexpr std::pair<std::uint64_t, std::uint64_t> chunk_bounds(std::uint64_t j) noexcept {
  return {chunk_start(j), chunk_start(j + 1)};
}
/// The j >= 1 whose chunk contains position i.
std::uint64_t chunk_of(std::uint64_t i) noexcept;

/// Bit j of the dyadic interpolant b(r), unfolding the recursion
///   b(r) = 0^w (+) b(2r) for 0 < r <= 1/2,  b(r) = b(2r-1) (+) 1^w for 1/2 < r < 1
/// one interleave level per step. Each step halves j, and once j = 0 the map
/// r -> 2r-1 is only applied while r > 1/2, which shrinks 1-r geometrically,
/// so the loop ends for every rational r.
bool b_bit(const Rational& r, std::uint64_t j) noexcept;

/// A block [start, start+length) that is, by construction, a center of
/// canonical_code(length, radius). Description ledgers encode such blocks by index.
struct CodedSpan {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t radius = 0;

  friend bool operator==(const CodedSpan&, const CodedSpan&) = default;
};

/// Deterministic, restartable producer of sequence bits. bit(i) depends only on
/// the descriptor; clones carry their own cursor.
class PrefixSource {
 public:
  virtual ~PrefixSource() = default;

  virtual std::unique_ptr<PrefixSource> clone() const = 0;
  /// Compact text form `kind:key=value,...`. Generator descriptors round-trip
  /// through parse_source; materialized outputs describe their construction.
  virtual std::string descriptor() const = 0;

  bool next() {
    const bool bit = produce();
    ++position_;
    return bit;
  }
  BitBlock read(std::size_t count);
  void skip(std::size_t count);
  void restart() {
    position_ = 0;
    reset();
  }
  std::size_t position() const noexcept { return position_; }

  /// Coded blocks starting inside [0, n), in position order. A block may end past n.
  virtual std::vector<CodedSpan> coded_layout(std::size_t /*n*/) const { return {}; }
  /// Number of available bits for finite (materialized) sources.
  virtual std::optional<std::size_t> horizon() const { return std::nullopt; }

 protected:
  PrefixSource() = default;
  PrefixSource(const PrefixSource&) = default;
  PrefixSource& operator=(const PrefixSource&) = default;

  virtual bool produce() = 0;
  virtual void reset() = 0;

 private:
  std::size_t position_ = 0;
};

/// Owning handle with value semantics: copying clones the source.
class SourcePtr {
 public:
  SourcePtr() = default;
  template <class T>
    requires std::derived_from<T, PrefixSource>
  SourcePtr(std::unique_ptr<T> source) : source_(std::move(source)) {}  // NOLINT
  SourcePtr(const SourcePtr& other) : source_(other.source_ ? other.source_->clone() : nullptr) {}
  SourcePtr(SourcePtr&&) noexcept = default;
  SourcePtr& operator=(const SourcePtr& other) {
    if (this != &other) source_ = other.source_ ? other.source_->clone() : nullptr;
    return *this;
  }
  SourcePtr& operator=(SourcePtr&&) noexcept = default;

  PrefixSource* operator->() const noexcept { return source_.get(); }
  PrefixSource& operator*() const noexcept { return *source_; }
  PrefixSource* get() const noexcept { return source_.get(); }
  explicit operator bool() const noexcept { return static_cast<bool>(source_); }

 private:
  std::unique_ptr<PrefixSource> source_;
};

/// First n bits of a fresh clone of src, leaving src untouched.
BitBlock prefix(const PrefixSource& src, std::size_t n);

class ConstSource final : public PrefixSource {
 public:
  explicit ConstSource(bool value) : value_(value) {}
  std::unique_ptr<PrefixSource> clone() const override { return std::make_unique<ConstSource>(*this); }
  std::string descriptor() const override;

 protected:
  bool produce() override { return value_; }
  void reset() override {}

 private:
  bool value_;
};

/// Fair coin flips: bit i is bit i%64 of output i/64 of CounterRng(seed, "uniform").
class UniformSource final : public PrefixSource {
 public:
  explicit UniformSource(std::uint64_t seed) : seed_(seed), rng_(seed, "uniform") {}
  std::unique_ptr<PrefixSource> clone() const override { return std::make_unique<UniformSource>(*this); }
  std::string descriptor() const override;

 protected:
  bool produce() override;
  void reset() override {}

 private:
  std::uint64_t seed_;
  CounterRng rng_;
};

/// Bit i is 1 iff the top 53 bits of output i, read as a fraction, fall below p.
/// The role tag separates independent streams drawn from one user seed.
class BernoulliSource final : public PrefixSource {
 public:
  BernoulliSource(double p, std::uint64_t seed, std::string role = "bernoulli");
  std::unique_ptr<PrefixSource> clone() const override { return std::make_unique<BernoulliSource>(*this); }
  std::string descriptor() const override;
  double p() const noexcept { return p_; }

 protected:
  bool produce() override;
  void reset() override {}

 private:
  double p_;
  double threshold_;
  std::uint64_t seed_;
  std::string role_;
  CounterRng rng_;
};

/// The sequence b(r).
class DyadicSource final : public PrefixSource {
 public:
  explicit DyadicSource(Rational r) : r_(r) {}
  std::unique_ptr<PrefixSource> clone() const override { return std::make_unique<DyadicSource>(*this); }
  std::string descriptor() const override;

 protected:
  bool produce() override { return b_bit(r_, position()); }
  void reset() override {}

 private:
  Rational r_;
};

/// Mix(X0, X1, r): chunk I_j is copied from X_{b(r)(j)}. Both inputs advance in
/// lockstep, so position i of the output is position i of the chosen input.
class MixSource final : public PrefixSource {
 public:
  MixSource(SourcePtr src0, SourcePtr src1, Rational r);
  std::unique_ptr<PrefixSource> clone() const override { return std::make_unique<MixSource>(*this); }
  std::string descriptor() const override;
  std::vector<CodedSpan> coded_layout(std::size_t n) const override;
  std::optional<std::size_t> horizon() const override;

 protected:
  bool produce() override;
  void reset() override;

 private:
  SourcePtr src0_;
  SourcePtr src1_;
  Rational r_;
  std::uint64_t chunk_ = 1;
  std::uint64_t chunk_end_ = 1;
  bool pick_ = false;
};

/// B ▷ Y: the characteristic sequence of {y_{b_0}, y_{b_1}, ...}, where y_k is
/// the position of the k-th one of Y and b_k the k-th one of B. Output bit i is
/// Y(i) AND B(number of ones of Y before i).
class ThinSource final : public PrefixSource {
 public:
  ThinSource(SourcePtr y, SourcePtr b) : y_(std::move(y)), b_(std::move(b)) {}
  std::unique_ptr<PrefixSource> clone() const override { return std::make_unique<ThinSource>(*this); }
  std::string descriptor() const override;

 protected:
  bool produce() override { return y_->next() && b_->next(); }
  void reset() override {
    y_->restart();
    b_->restart();
  }

 private:
  SourcePtr y_;
  SourcePtr b_;
};

class XorSource final : public PrefixSource {
 public:
  XorSource(SourcePtr a, SourcePtr b) : a_(std::move(a)), b_(std::move(b)) {}
  std::unique_ptr<PrefixSource> clone() const override { return std::make_unique<XorSource>(*this); }
  std::string descriptor() const override;
  std::optional<std::size_t> horizon() const override;

 protected:
  bool produce() override { return a_->next() != b_->next(); }
  void reset() override {
    a_->restart();
    b_->restart();
  }

 private:
  SourcePtr a_;
  SourcePtr b_;
};

/// Finite source holding an explicit prefix, e.g. a transformation output.
/// Reading past the horizon throws std::out_of_range.
class MaterializedSource final : public PrefixSource {
 public:
  MaterializedSource(BitBlock bits, std::string descriptor, std::vector<CodedSpan> layout = {});
  std::unique_ptr<PrefixSource> clone() const override { return std::make_unique<MaterializedSource>(*this); }
  std::string descriptor() const override { return descriptor_; }
  std::vector<CodedSpan> coded_layout(std::size_t n) const override;
  std::optional<std::size_t> horizon() const override { return bits_.size(); }
  const BitBlock& bits() const noexcept { return bits_; }

 protected:
  bool produce() override;
  void reset() override {}

 private:
  BitBlock bits_;
  std::string descriptor_;
  std::vector<CodedSpan> layout_;
};

SourcePtr make_const(bool value);
SourcePtr make_uniform(std::uint64_t seed);
SourcePtr make_bernoulli(double p, std::uint64_t seed, std::string role = "bernoulli");
SourcePtr make_dyadic(Rational r);
SourcePtr make_mix(SourcePtr src0, SourcePtr src1, Rational r);
SourcePtr thin_by(SourcePtr y, SourcePtr b);
SourcePtr make_xor(SourcePtr a, SourcePtr b);

/// Finite B ▷ Y over the first n bits of Y. Throws std::out_of_range naming the
/// shortfall when Y has more ones in that window than B has bits.
BitBlock thin_prefix(const BitBlock& y, const BitBlock& b);

/// Shortest round-trip decimal form used inside descriptors.
std::string format_double(double x);

}  // namespace effdim
