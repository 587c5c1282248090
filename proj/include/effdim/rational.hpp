#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace effdim {

/// Exact rational in [0, 1] with denominator at most 2^62, kept in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// Throws std::domain_error unless 0 <= num <= den, 0 < den <= 2^62.
  static Rational make(std::uint64_t num, std::uint64_t den);

  /// Nearest multiple of 2^-53 to x in [0, 1].
  static Rational from_double(double x);

  /// Accepts "m/k" or a decimal literal (rounded as from_double).
  static Rational parse(std::string_view text);

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

}  // namespace effdim
