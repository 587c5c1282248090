#pragma once

#include <optional>

namespace effdim {

/// Pair of effective dimensions, both in [0,1].
struct DimPair {
  double s = 0.0;
  double t = 0.0;

  /// Throws std::domain_error unless both components lie in [0,1].
  static DimPair checked(double s, double t);
};

/// Optimal change rate for lowering a dimension-s sequence.
struct CriticalProfile {
  double s = 0.0;
  double c = 0.0;       ///< 1 - 2^(s-1), in [0, 1/2]
  double t_star = 0.0;  ///< 1 - H(c); below this target the random-case bound applies
  /// Benefit-per-change (s - 1 + H(c)) / c. Empty at s = 1 where it is a 0/0 form.
  std::optional<double> ratio;
};

/// Minimum and maximum of d(X, A_t) over dimension-s sequences X.
struct DistanceEnvelope {
  double min = 0.0;
  double max = 0.0;
};

/// Binary entropy H(p) in bits, with H(0) = H(1) = 0.
double binary_entropy(double p);

/// Inverse of H restricted to [0, 1/2], by bisection.
double entropy_inv(double y);

CriticalProfile critical_profile(double s);

/// Smallest increasing concave majorant of max{0, s - 1 + H(d)} on [0, 1/2]:
/// linear through the origin below c, equal to s - 1 + H(d) from c on.
double f_envelope(double s, double d);

/// Largest possible distance from a dimension-s sequence to the nearest
/// dimension-t sequence, t <= s.
double worst_distance(double s, double t);

DistanceEnvelope bound_envelope(DimPair dims);

/// Left side minus right side of
///   H(a) + H((a-b)/a) a = H(1-b) + H((a-b)/(1-b)) (1-b),
/// valid for a in (0,1], b in [0,1), a >= b.
double ternary_residual(double a, double b);

}  // namespace effdim
