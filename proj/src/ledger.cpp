#include "effdim/ledger.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "effdim/ball_rank.hpp"
#include "effdim/covercode.hpp"
#include "effdim/prefix_code.hpp"

namespace effdim {

namespace {

using IndexMap = std::unordered_map<Word, std::uint64_t>;

std::shared_ptr<const IndexMap> center_index(const CoveringCode& code) {
  static std::mutex mutex;
  static std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, std::shared_ptr<const IndexMap>> memo;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(code.n, code.r, code.seed);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;
  auto map = std::make_shared<IndexMap>();
  for (std::size_t i = 0; i < code.centers.size(); ++i) map->emplace(code.centers[i], i);
  memo.emplace(key, map);
  return map;
}

BitBlock complement(const BitBlock& block) {
  BitBlock out(block.size());
  for (std::size_t i = 0; i < block.size(); ++i) out.set(i, !block[i]);
  return out;
}

/// Move-to-front list of coded (len, r) shapes, kept in step by encoder and decoder.
class ShapeList {
 public:
  std::size_t size() const noexcept { return shapes_.size(); }
  /// Position of the shape, or size() if absent.
  std::size_t find(std::uint64_t length, std::uint64_t radius) const {
    const auto it = std::find(shapes_.begin(), shapes_.end(), std::make_pair(length, radius));
    return static_cast<std::size_t>(it - shapes_.begin());
  }
  const std::pair<std::uint64_t, std::uint64_t>& at(std::size_t k) const { return shapes_.at(k); }
  void promote(std::size_t k, std::uint64_t length, std::uint64_t radius) {
    if (k < shapes_.size()) shapes_.erase(shapes_.begin() + static_cast<std::ptrdiff_t>(k));
    shapes_.insert(shapes_.begin(), {length, radius});
  }

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> shapes_;
};

class Encoder {
 public:
  Encoder(const BitBlock& bits, std::size_t n) : bits_(bits) { ledger_.n = n; }

  void preamble() {
    const std::size_t before = writer_.size();
    writer_.put_gamma(ledger_.n + 1);
    record(0, 0, false, writer_.size() - before, 0);
  }

  void plain_span(std::size_t begin, std::size_t end) {
    while (begin < end) {
      const std::uint64_t j = chunk_of(begin);
      const std::size_t stop = std::min<std::size_t>(end, chunk_start(j + 1));
      plain(begin, stop - begin);
      begin = stop;
    }
  }

  void coded(const CodedSpan& span) {
    const auto code = canonical_code(span.length, span.radius);
    const auto index = center_index(*code);
    const Word word = bits_.slice(span.start, span.length).to_word();
    const auto it = index->find(word);
    if (it == index->end()) {
      throw std::logic_error(fmt::format("ledger: block at {} (length {}) is not a center of its code", span.start,
                                         span.length));
    }
    const std::size_t before = writer_.size();
    writer_.put(false);
    const std::size_t k = shapes_.find(span.length, span.radius);
    writer_.put_gamma(k + 1);
    if (k == shapes_.size()) {
      writer_.put_gamma(span.length);
      writer_.put_gamma(span.radius);
    }
    shapes_.promote(k, span.length, span.radius);
    const std::size_t header = writer_.size() - before;
    const std::size_t width = index_width(code->centers.size());
    writer_.put_uint(it->second, width);
    record(span.start, span.length, true, header, width);
  }

  EncodedPrefix finish() {
    ledger_.total_bits = writer_.size();
    return {std::move(ledger_), writer_.take()};
  }

 private:
  void plain(std::size_t start, std::size_t length) {
    const BitBlock block = bits_.slice(start, length);
    const std::size_t ones = block.count_ones();
    const bool minority_is_one = ones <= length - ones;
    const std::size_t m = minority_is_one ? ones : length - ones;
    const std::size_t before = writer_.size();
    writer_.put(true);
    writer_.put_gamma(length);
    writer_.put_gamma(m + 1);
    writer_.put(minority_is_one);
    const std::size_t header = writer_.size() - before;
    const std::size_t width = index_width(ball_volume(length, m).value);
    writer_.put_big(ball_rank(minority_is_one ? block : complement(block)), width);
    record(start, length, false, header, width);
  }

  void record(std::size_t start, std::size_t length, bool coded, std::size_t header, std::size_t payload) {
    LedgerEntry e;
    e.chunk = length == 0 ? 0 : static_cast<std::size_t>(chunk_of(start));
    e.start = start;
    e.length = length;
    e.coded = coded;
    e.header_bits = header;
    e.payload_bits = payload;
    e.cumulative_bits = writer_.size();
    ledger_.entries.push_back(e);
  }

  const BitBlock& bits_;
  ShapeList shapes_;
  BitWriter writer_;
  CodeLengthLedger ledger_;
};

}  // namespace

EncodedPrefix encode_prefix(const PrefixSource& src, std::size_t n) {
  const auto horizon = src.horizon();
  if (horizon && n > *horizon) {
    throw std::out_of_range(fmt::format("ledger: n={} beyond the materialized horizon {}", n, *horizon));
  }
  if (n == 0) return {};
  std::vector<CodedSpan> spans = src.coded_layout(n);
  std::sort(spans.begin(), spans.end(), [](const CodedSpan& a, const CodedSpan& b) { return a.start < b.start; });
  std::size_t extent = n;
  const std::size_t limit = horizon.value_or(static_cast<std::size_t>(-1));
  for (const CodedSpan& s : spans) {
    if (s.start + s.length <= limit) extent = std::max(extent, s.start + s.length);
  }
  const BitBlock bits = prefix(src, extent);

  Encoder encoder(bits, n);
  encoder.preamble();
  std::size_t cursor = 0;
  for (const CodedSpan& span : spans) {
    if (span.start < cursor || span.start + span.length > limit) continue;
    encoder.plain_span(cursor, span.start);
    encoder.coded(span);
    cursor = span.start + span.length;
  }
  if (cursor < n) encoder.plain_span(cursor, n);
  return encoder.finish();
}

CodeLengthLedger description_ledger(const PrefixSource& src, std::size_t n) { return encode_prefix(src, n).ledger; }

BitBlock decode_prefix(const BitBlock& stream) {
  if (stream.empty()) return {};
  BitReader reader(stream);
  const std::uint64_t n = reader.get_gamma() - 1;
  BitBlock out;
  ShapeList shapes;
  while (out.size() < n) {
    if (!reader.get()) {
      const std::uint64_t k = reader.get_gamma() - 1;
      if (k > shapes.size()) throw std::invalid_argument("decode: shape index out of range");
      std::uint64_t length = 0;
      std::uint64_t r = 0;
      if (k == shapes.size()) {
        length = reader.get_gamma();
        r = reader.get_gamma();
      } else {
        std::tie(length, r) = shapes.at(k);
      }
      shapes.promote(k, length, r);
      const auto code = canonical_code(length, r);
      const std::uint64_t index = reader.get_uint(index_width(code->centers.size()));
      if (index >= code->centers.size()) throw std::invalid_argument("decode: center index out of range");
      out.append(code->center(index));
    } else {
      const std::uint64_t length = reader.get_gamma();
      const std::uint64_t m = reader.get_gamma() - 1;
      const bool minority_is_one = reader.get();
      if (2 * m > length) throw std::invalid_argument("decode: minority count exceeds half the block");
      const BigInt rank = reader.get_big(index_width(ball_volume(length, m).value));
      const BitBlock block = ball_unrank(length, rank);
      if (block.count_ones() != m) throw std::invalid_argument("decode: rank does not match minority count");
      out.append(minority_is_one ? block : complement(block));
    }
  }
  if (!reader.at_end()) throw std::invalid_argument("decode: trailing bits after the last segment");
  return out.slice(0, n);
}

nlohmann::json ledger_json(const CodeLengthLedger& ledger) {
  nlohmann::json records = nlohmann::json::array();
  for (const LedgerEntry& e : ledger.entries) {
    const std::size_t covered = std::min(ledger.n, e.start + e.length);
    nlohmann::json rec{{"chunk", e.chunk},
                       {"start", e.start},
                       {"length", e.length},
                       {"coded", e.coded},
                       {"header_bits", e.header_bits},
                       {"payload_bits", e.payload_bits},
                       {"cumulative_bits", e.cumulative_bits}};
    if (covered == 0) {
      rec["cumulative_ratio"] = nullptr;
    } else {
      rec["cumulative_ratio"] = static_cast<double>(e.cumulative_bits) / static_cast<double>(covered);
    }
    records.push_back(std::move(rec));
  }
  return {{"n", ledger.n}, {"total_bits", ledger.total_bits}, {"ratio", ledger.ratio()}, {"entries", records}};
}

}  // namespace effdim
