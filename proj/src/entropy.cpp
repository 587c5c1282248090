#include "effdim/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace effdim {

namespace {

constexpr double kBranchSlack = 1e-12;

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
  }
}

}  // namespace

DimPair DimPair::checked(double s, double t) {
  require_unit(s, "dimension s");
  require_unit(t, "dimension t");
  return DimPair{s, t};
}

double binary_entropy(double p) {
  require_unit(p, "probability");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double entropy_inv(double y) {
  require_unit(y, "entropy value");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  // 60 halvings of [0, 1/2] reach below 1e-18, well past the 1e-14 target.
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (binary_entropy(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Return whichever endpoint lands closer in entropy.
  return std::abs(binary_entropy(lo) - y) <= std::abs(binary_entropy(hi) - y) ? lo : hi;
}

CriticalProfile critical_profile(double s) {
  require_unit(s, "dimension s");
  CriticalProfile out;
  out.s = s;
  out.c = 1.0 - std::exp2(s - 1.0);
  out.t_star = 1.0 - binary_entropy(out.c);
  if (s < 1.0) out.ratio = (s - 1.0 + binary_entropy(out.c)) / out.c;
  return out;
}

double f_envelope(double s, double d) {
  require_unit(s, "dimension s");
  if (!(d >= 0.0 && d <= 0.5)) {
    throw std::domain_error("distance d must lie in [0,1/2], got " + std::to_string(d));
  }
  const CriticalProfile prof = critical_profile(s);
  if (d >= prof.c) return s - 1.0 + binary_entropy(d);
  return *prof.ratio * d;
}

double worst_distance(double s, double t) {
  require_unit(s, "dimension s");
  require_unit(t, "dimension t");
  if (t > s) {
    throw std::domain_error("worst_distance requires t <= s");
  }
  if (t == s) return 0.0;
  const CriticalProfile prof = critical_profile(s);
  if (t <= prof.t_star + kBranchSlack) return entropy_inv(1.0 - t);
  return prof.c / (s - prof.t_star) * (s - t);
}

DistanceEnvelope bound_envelope(DimPair dims) {
  const auto [s, t] = DimPair::checked(dims.s, dims.t);
  if (t >= s) {
    return {entropy_inv(t - s), entropy_inv(t) - entropy_inv(s)};
  }
  return {entropy_inv(s - t), worst_distance(s, t)};
}

double ternary_residual(double a, double b) {
  if (!(a > 0.0 && a <= 1.0)) throw std::domain_error("ternary_residual requires a in (0,1]");
  if (!(b >= 0.0 && b < 1.0)) throw std::domain_error("ternary_residual requires b in [0,1)");
  if (b > a) throw std::domain_error("ternary_residual requires a >= b");
  const double lhs = binary_entropy(a) + binary_entropy((a - b) / a) * a;
  const double rhs = binary_entropy(1.0 - b) + binary_entropy((a - b) / (1.0 - b)) * (1.0 - b);
  return lhs - rhs;
}

}  // namespace effdim
