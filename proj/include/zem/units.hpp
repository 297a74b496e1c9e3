#pragma once

#include <cmath>
#include <numbers>

namespace zem {

inline constexpr double kMphToMps = 0.44704;
inline constexpr double kHorsepowerW = 745.7;
inline constexpr double kSecondsPerHour = 3600.0;

constexpr double mph_to_mps(double mph) { return mph * kMphToMps; }
constexpr double mps_to_mph(double mps) { return mps / kMphToMps; }
constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Nearest integer, ties away from zero. Values within 1e-9 of a tie count
/// as the tie so that decimal inputs such as 265 * 0.7 round like their
/// exact decimal value.
inline double round_half_away(double x) {
  const double whole = std::trunc(x);
  const double frac = std::abs(x - whole);
  if (std::abs(frac - 0.5) < 1e-9) return whole + std::copysign(1.0, x);
  return std::round(x);
}

}  // namespace zem
