#pragma once

#include <numbers>

namespace leojam {

inline constexpr double kMuEarth = 398600.4418;          // km^3 / s^2
inline constexpr double kEarthRadiusKm = 6378.137;       // WGS-84 equatorial
inline constexpr double kWgs84Flattening = 1.0 / 298.257223563;
inline constexpr double kSiderealDaySeconds = 86164.0905;
inline constexpr double kGeoSemiMajorAxisKm = 42164.169;
inline constexpr double kBoltzmann = 1.380649e-23;       // J / K
inline constexpr double kSpeedOfLight = 299792458.0;     // m / s

/// 20*log10(4*pi*1000/c): the constant term of the path-loss factorization
/// with distance in km and frequency in Hz.
inline constexpr double kFsplConstantDb = -87.55221678;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

}  // namespace leojam
