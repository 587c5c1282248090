#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "effdim/bitblock.hpp"
#include "effdim/streams.hpp"

namespace effdim {

/// One segment of the self-delimiting encoding. The first entry of a nonempty
/// ledger is the preamble (gamma code of n+1, length 0, chunk 0).
struct LedgerEntry {
  std::size_t chunk = 0;
  std::size_t start = 0;
  std::size_t length = 0;
  bool coded = false;
  std::size_t header_bits = 0;
  std::size_t payload_bits = 0;
  std::size_t cumulative_bits = 0;
};

/// Exact bit counts of a concrete encoding of a prefix: gamma(n+1), then
/// segments, each opened by a kind bit.
///   0  coded block: gamma(k+1), k the block's (len, r) position in a
///      move-to-front list of earlier shapes; k = list size introduces a new
///      shape, followed by gamma(len), gamma(r)
///   1  plain block: gamma(len), gamma(m+1), minority-symbol flag
/// A coded block carries ceil(log2 S) center-index bits; a plain block carries
/// ceil(log2 V(len, m)) ball-rank bits, m being its minority count.
/// Coded segments come from the source's coded layout and are written whole,
/// even when they end past n; the gaps are plain segments cut at chunk
/// boundaries and at n.
struct CodeLengthLedger {
  std::size_t n = 0;
  std::vector<LedgerEntry> entries;
  std::size_t total_bits = 0;

  double ratio() const { return n == 0 ? 0.0 : static_cast<double>(total_bits) / static_cast<double>(n); }
};

struct EncodedPrefix {
  CodeLengthLedger ledger;
  BitBlock stream;
};

/// Throws std::out_of_range when n exceeds a finite source's horizon, and
/// std::logic_error if a layout block is not a member of its code.
EncodedPrefix encode_prefix(const PrefixSource& src, std::size_t n);
CodeLengthLedger description_ledger(const PrefixSource& src, std::size_t n);

/// Reference decoder. Throws on malformed or trailing input.
BitBlock decode_prefix(const BitBlock& stream);

/// Records (chunk, start, length, coded, header_bits, payload_bits,
/// cumulative_bits, cumulative_ratio) plus totals.
nlohmann::json ledger_json(const CodeLengthLedger& ledger);

}  // namespace effdim
