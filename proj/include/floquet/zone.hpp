#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace floquet {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Values this close (relative to omega) to the open edge -omega/2 are snapped
// onto the closed edge +omega/2.
inline constexpr double kZoneEdgeTolerance = 1e-10;

// Maps a quasienergy into the first temporal Brillouin zone (-omega/2, omega/2].
inline double reduce_to_zone(double value, double omega) {
  const double half = 0.5 * omega;
  double r = value - omega * std::floor((value + half) / omega);  // [-half, half)
  if (r <= -half + kZoneEdgeTolerance * omega) r += omega;
  if (r > half) r = half;
  return r;
}

// Distance between two quasienergies on the circle of circumference omega,
// in [0, omega/2].
inline double zone_distance(double a, double b, double omega) {
  double d = std::fmod(std::abs(a - b), omega);
  return std::min(d, omega - d);
}

}  // namespace floquet
