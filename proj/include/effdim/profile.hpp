#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "effdim/streams.hpp"

namespace effdim {

struct DistanceProfile {
  std::vector<std::size_t> checkpoints;
  std::vector<std::size_t> differences;  ///< exact Δ(a↾n, b↾n)
  std::vector<double> distance;          ///< differences / n
  std::vector<double> density_a;
  std::vector<double> density_b;
  /// Max of distance over the final half of the checkpoints.
  double tail_max = 0.0;

  double final_distance() const { return distance.empty() ? 0.0 : distance.back(); }
};

/// Profiles fresh clones of a and b. Throws std::invalid_argument unless the
/// checkpoints are positive and strictly increasing.
DistanceProfile distance_profile(const PrefixSource& a, const PrefixSource& b,
                                 const std::vector<std::size_t>& checkpoints);

/// count checkpoints spaced geometrically up to n, always ending at n.
std::vector<std::size_t> geometric_checkpoints(std::size_t n, std::size_t count);

/// The chunk boundaries n_j that fall in [1, n].
std::vector<std::size_t> chunk_checkpoints(std::size_t n);

/// CSV with columns n, differences, distance, density_a, density_b.
std::string profile_csv(const DistanceProfile& profile);

/// 2 e^{-2 eps^2 j}; throws std::domain_error for negative inputs.
double hoeffding_tolerance(double eps, double j);

}  // namespace effdim
