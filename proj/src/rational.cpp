#include "effdim/rational.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace effdim {

namespace {

constexpr std::uint64_t kMaxDen = std::uint64_t{1} << 62;

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(fmt::format("bad integer '{}' in rational", text));
  }
  return value;
}

}  // namespace

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || den > kMaxDen) throw std::domain_error("rational denominator must be in (0, 2^62]");
  if (num > den) throw std::domain_error("rational must lie in [0, 1]");
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Rational Rational::from_double(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error(fmt::format("rational value {} outside [0, 1]", x));
  constexpr double kScale = 9007199254740992.0;  // 2^53
  return make(static_cast<std::uint64_t>(std::llround(x * kScale)), std::uint64_t{1} << 53);
}

Rational Rational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return make(parse_u64(text.substr(0, slash)), parse_u64(text.substr(slash + 1)));
  }
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(fmt::format("bad rational '{}'", text));
  }
  return from_double(value);
}

std::string Rational::to_string() const { return fmt::format("{}/{}", num, den); }

}  // namespace effdim
