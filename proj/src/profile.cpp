#include "effdim/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace effdim {

DistanceProfile distance_profile(const PrefixSource& a, const PrefixSource& b,
                                 const std::vector<std::size_t>& checkpoints) {
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == 0 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      throw std::invalid_argument("distance_profile: checkpoints must be positive and strictly increasing");
    }
  }
  auto sa = a.clone();
  auto sb = b.clone();
  sa->restart();
  sb->restart();
  DistanceProfile out;
  out.checkpoints = checkpoints;
  std::size_t pos = 0;
  std::size_t diff = 0;
  std::size_t ones_a = 0;
  std::size_t ones_b = 0;
  for (std::size_t n : checkpoints) {
    for (; pos < n; ++pos) {
      const bool x = sa->next();
      const bool y = sb->next();
      diff += x != y;
      ones_a += x;
      ones_b += y;
    }
    const auto dn = static_cast<double>(n);
    out.differences.push_back(diff);
    out.distance.push_back(static_cast<double>(diff) / dn);
    out.density_a.push_back(static_cast<double>(ones_a) / dn);
    out.density_b.push_back(static_cast<double>(ones_b) / dn);
  }
  const std::size_t half = out.distance.size() / 2;
  for (std::size_t i = half; i < out.distance.size(); ++i) out.tail_max = std::max(out.tail_max, out.distance[i]);
  return out;
}

std::vector<std::size_t> geometric_checkpoints(std::size_t n, std::size_t count) {
  std::vector<std::size_t> out;
  if (n == 0 || count == 0) return out;
  const double ratio = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(count));
  double value = 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    value *= ratio;
    const auto c = std::min(n, static_cast<std::size_t>(std::llround(value)));
    if (c >= 1 && (out.empty() || c > out.back())) out.push_back(c);
  }
  if (out.empty() || out.back() != n) out.push_back(n);
  return out;
}

std::vector<std::size_t> chunk_checkpoints(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::uint64_t j = 2; chunk_start(j) <= n; ++j) out.push_back(chunk_start(j));
  return out;
}

std::string profile_csv(const DistanceProfile& profile) {
  std::string out = "n,differences,distance,density_a,density_b\n";
  for (std::size_t i = 0; i < profile.checkpoints.size(); ++i) {
    out += fmt::format("{},{},{:.6g},{:.6g},{:.6g}\n", profile.checkpoints[i], profile.differences[i],
                       profile.distance[i], profile.density_a[i], profile.density_b[i]);
  }
  return out;
}

double hoeffding_tolerance(double eps, double j) {
  if (eps < 0.0 || j < 0.0) throw std::domain_error("hoeffding_tolerance: arguments must be non-negative");
  return 2.0 * std::exp(-2.0 * eps * eps * j);
}

}  // namespace effdim
