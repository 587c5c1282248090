#include "effdim/codeword.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "effdim/covercode.hpp"
#include "effdim/entropy.hpp"
#include "effdim/prefix_code.hpp"

namespace effdim {

std::size_t codeword_radius(double s, std::size_t n) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error(fmt::format("codeword_radius: s={} outside [0, 1]", s));
  const double raw = entropy_inv(1.0 - s) * static_cast<double>(n);
  const double r = std::ceil(raw - 1e-9);
  return std::min(n, static_cast<std::size_t>(std::max(0.0, r)));
}

std::vector<std::size_t> chunk_blocks(std::size_t j, std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("chunk_blocks: cap must be positive");
  if (j == 0) return {};
  if (j <= cap) return {j};
  const std::size_t count = (j + cap - 1) / cap;
  std::vector<std::size_t> out(count, j / count);
  for (std::size_t i = 0; i < j % count; ++i) ++out[i];
  return out;
}

CodewordSource::CodewordSource(CodewordSpec spec) : spec_(std::move(spec)) {
  if (!spec_.base) throw std::invalid_argument("codeword source needs a base stream");
  if (!(spec_.s >= 0.0 && spec_.s <= 1.0)) throw std::domain_error("codeword source: s outside [0, 1]");
  if (spec_.chunk_cap < 2) throw std::invalid_argument("codeword source: chunk cap must be at least 2");
  reset();
}

std::string CodewordSource::descriptor() const {
  return fmt::format("codeword:s={},nmax={},base=[{}]", format_double(spec_.s), spec_.chunk_cap,
                     spec_.base->descriptor());
}

void CodewordSource::reset() {
  spec_.base->restart();
  chunk_ = 0;
  buffer_ = BitBlock();
  offset_ = 0;
}

void CodewordSource::fill_chunk() {
  ++chunk_;
  buffer_ = BitBlock();
  offset_ = 0;
  for (std::size_t len : chunk_blocks(chunk_, spec_.chunk_cap)) {
    const BitBlock block = spec_.base->read(len);
    const std::size_t r = codeword_radius(spec_.s, len);
    if (r == 0) {
      buffer_.append(block);
      continue;
    }
    const auto table = canonical_table(len, r);
    buffer_.append(BitBlock::from_word(len, table->center(block.to_word())));
  }
}

bool CodewordSource::produce() {
  while (offset_ >= buffer_.size()) fill_chunk();
  return buffer_[offset_++];
}

std::vector<CodedSpan> CodewordSource::coded_layout(std::size_t n) const {
  std::vector<CodedSpan> out;
  for (std::uint64_t j = 1; chunk_start(j) < n; ++j) {
    std::size_t start = chunk_start(j);
    for (std::size_t len : chunk_blocks(j, spec_.chunk_cap)) {
      const std::size_t r = codeword_radius(spec_.s, len);
      if (start >= n) return out;
      if (r > 0) out.push_back({start, len, r});
      start += len;
    }
  }
  return out;
}

SourcePtr codeword_source(CodewordSpec spec) { return std::make_unique<CodewordSource>(std::move(spec)); }

DensityCodeLength density_code_length(const BitBlock& block) {
  if (block.empty()) throw std::invalid_argument("density_code_length: empty block");
  const std::size_t ones = block.count_ones();
  DensityCodeLength out;
  out.minority = std::min(ones, block.size() - ones);
  out.header_bits = gamma_length(out.minority + 1) + 1;
  out.payload_bits = index_width(ball_volume(block.size(), out.minority).value);
  return out;
}

}  // namespace effdim
