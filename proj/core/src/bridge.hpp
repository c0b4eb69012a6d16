#pragma once

#include <cmath>

namespace fwlab::detail {

inline double bump_theta(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Monotone C-infinity bridge, 0 for t <= 0 and 1 for t >= 1.
inline double smooth_bridge(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = bump_theta(t);
  return a / (a + bump_theta(1.0 - t));
}

}  // namespace fwlab::detail
