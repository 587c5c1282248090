#include "effdim/code_file.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "effdim/io.hpp"

namespace effdim {

namespace {

constexpr std::string_view kFormatId = "covercode v1";

std::uint64_t parse_field(std::string_view token, std::string_view name) {
  if (token.size() <= name.size() + 1 || token.substr(0, name.size()) != name || token[name.size()] != '=') {
    throw std::invalid_argument(fmt::format("code header: expected {}=<value>, got '{}'", name, token));
  }
  const std::string_view digits = token.substr(name.size() + 1);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || end != digits.data() + digits.size()) {
    throw std::invalid_argument(fmt::format("code header: bad value in '{}'", token));
  }
  return value;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (eol == std::string_view::npos) break;
    text.remove_prefix(eol + 1);
  }
  return lines;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string format_code(const CoveringCode& code) {
  std::string out =
      fmt::format("{} n={} r={} seed={} S={}\n", kFormatId, code.n, code.r, code.seed, code.centers.size());
  out.reserve(out.size() + code.centers.size() * (code.n + 1));
  for (Word w : code.centers) {
    out += BitBlock::from_word(code.n, w).to_string();
    out += '\n';
  }
  return out;
}

CoveringCode parse_code(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw std::invalid_argument("code file is empty");
  const auto tokens = split_spaces(lines[0]);
  if (tokens.size() != 6 || tokens[0] != "covercode" || tokens[1] != "v1") {
    throw std::invalid_argument(fmt::format("code header must start with '{}'", kFormatId));
  }
  const auto n = parse_field(tokens[2], "n");
  const auto r = parse_field(tokens[3], "r");
  const auto seed = parse_field(tokens[4], "seed");
  const auto count = parse_field(tokens[5], "S");
  if (n > 64) throw std::invalid_argument("code files support n <= 64");

  std::vector<Word> centers;
  centers.reserve(count);
  std::size_t line_no = 1;
  for (; line_no < lines.size() && centers.size() < count; ++line_no) {
    const auto line = lines[line_no];
    if (line.size() != n) {
      throw std::invalid_argument(fmt::format("code line {}: expected {} bits, got {}", line_no + 1, n, line.size()));
    }
    centers.push_back(BitBlock::from_string(line).to_word());
  }
  for (; line_no < lines.size(); ++line_no) {
    if (!lines[line_no].empty()) throw std::invalid_argument("code file has trailing content past S centers");
  }
  if (centers.size() != count) {
    throw std::invalid_argument(fmt::format("code file declares S={} but holds {} centers", count, centers.size()));
  }
  return make_code(n, r, std::move(centers), seed);
}

void write_code_file(const std::filesystem::path& path, const CoveringCode& code) {
  write_atomically(path, format_code(code));
}

CoveringCode read_code_file(const std::filesystem::path& path) { return parse_code(read_file(path)); }

std::filesystem::path code_cache_path(const std::filesystem::path& dir, std::size_t n, std::size_t r) {
  return dir / fmt::format("covercode-v1-n{}-r{}.txt", n, r);
}

}  // namespace effdim
