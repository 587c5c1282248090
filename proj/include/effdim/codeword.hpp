#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "effdim/bitblock.hpp"
#include "effdim/streams.hpp"

namespace effdim {

inline constexpr std::size_t kDefaultChunkCap = 12;

/// ceil(H^{-1}(1-s) n), clamped to [0, n]. The ceiling ignores a 1e-9 excess so
/// products that are integers up to rounding do not round up.
std::size_t codeword_radius(double s, std::size_t n);

/// Block lengths used for chunk j: the whole chunk when j <= cap, otherwise
/// ceil(j / cap) near-equal blocks (longer ones first).
std::vector<std::size_t> chunk_blocks(std::size_t j, std::size_t cap);

struct CodewordSpec {
  double s = 0.5;
  SourcePtr base;
  std::size_t chunk_cap = kDefaultChunkCap;
};

/// s-codeword over the canonical code family: each block of each chunk is
/// replaced by its nearest center in canonical_code(len, codeword_radius(s, len)).
/// Blocks with radius 0 copy the base.
class CodewordSource final : public PrefixSource {
 public:
  explicit CodewordSource(CodewordSpec spec);
  std::unique_ptr<PrefixSource> clone() const override { return std::make_unique<CodewordSource>(*this); }
  std::string descriptor() const override;
  std::vector<CodedSpan> coded_layout(std::size_t n) const override;
  std::optional<std::size_t> horizon() const override { return spec_.base->horizon(); }

  const CodewordSpec& spec() const noexcept { return spec_; }

 protected:
  bool produce() override;
  void reset() override;

 private:
  void fill_chunk();

  CodewordSpec spec_;
  std::uint64_t chunk_ = 0;
  BitBlock buffer_;
  std::size_t offset_ = 0;
};

SourcePtr codeword_source(CodewordSpec spec);

struct DensityCodeLength {
  std::size_t header_bits = 0;   ///< gamma(m+1) and the minority-symbol flag
  std::size_t payload_bits = 0;  ///< ceil(log2 V(n, m)) ball-rank bits
  std::size_t minority = 0;      ///< m = min(ones, zeros)

  std::size_t total() const noexcept { return header_bits + payload_bits; }
};

/// Exact cost of describing a block of known length by its minority symbol
/// count m and its rank inside B_m of the all-majority string.
DensityCodeLength density_code_length(const BitBlock& block);

}  // namespace effdim
