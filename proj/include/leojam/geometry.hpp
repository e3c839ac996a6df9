#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "leojam/constants.hpp"
#include "leojam/errors.hpp"
#include "leojam/orbit.hpp"
#include "leojam/time.hpp"

namespace leojam {

struct GroundStation {
  std::string name;
  double latitude_deg = 0.0;   // geodetic
  double longitude_deg = 0.0;  // [-180, 180]
  double altitude_m = 0.0;

  void validate() const {
    if (!(std::abs(latitude_deg) <= 90.0)) {
      throw ConfigError("station '" + name + "' latitude outside [-90, 90]");
    }
    if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0)) {
      throw ConfigError("station '" + name + "' longitude outside [-180, 180]");
    }
  }

  bool operator==(const GroundStation&) const = default;
};

/// Azimuth from true North, clockwise; elevation 90 at zenith.
struct Topocentric {
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
  double range_km = 0.0;
};

/// Greenwich Mean Sidereal Time (IAU 1982), degrees in [0, 360), with UT1 taken as UTC.
inline double gmst_deg(UtcInstant t) {
  const double d = t.seconds_since_j2000 / 86400.0;
  const double centuries = t.julian_centuries();
  // 67310.54841 s + (876600 h + 8640184.812866 s) T + 0.093104 T^2 - 6.2e-6 T^3,
  // with the whole-day part of the linear term folded out to keep precision.
  const double seconds = 67310.54841 + 8640184.812866 * centuries +
                         0.093104 * centuries * centuries -
                         6.2e-6 * centuries * centuries * centuries;
  const double deg = seconds / 240.0 + 360.0 * (d - std::floor(d));
  double wrapped = std::fmod(deg, 360.0);
  if (wrapped < 0.0) wrapped += 360.0;
  return wrapped >= 360.0 ? 0.0 : wrapped;
}

/// WGS-84 geodetic to Earth-fixed Cartesian, km.
template <typename Scalar = double>
Vector3<Scalar> geodetic_to_ecef(const GroundStation& station) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar a = Scalar(kEarthRadiusKm);
  const Scalar f = Scalar(kWgs84Flattening);
  const Scalar e2 = f * (Scalar(2) - f);
  const Scalar lat = Scalar(station.latitude_deg * kDegToRad);
  const Scalar lon = Scalar(station.longitude_deg * kDegToRad);
  const Scalar h = Scalar(station.altitude_m / 1000.0);
  const Scalar sin_lat = sin(lat);
  const Scalar prime_vertical = a / sqrt(Scalar(1) - e2 * sin_lat * sin_lat);
  return Vector3<Scalar>((prime_vertical + h) * cos(lat) * cos(lon),
                         (prime_vertical + h) * cos(lat) * sin(lon),
                         (prime_vertical * (Scalar(1) - e2) + h) * sin_lat);
}

/// Rotation taking inertial coordinates to Earth-fixed coordinates at `t`.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 3, 3> eci_to_ecef_rotation(UtcInstant t) {
  return Eigen::AngleAxis<Scalar>(Scalar(-gmst_deg(t) * kDegToRad), Vector3<Scalar>::UnitZ())
      .toRotationMatrix();
}

inline Vector3<double> eci_to_ecef(const EciState& state) {
  return eci_to_ecef_rotation(state.time) * state.position_km;
}

/// Local East-North-Up basis at a geodetic station, rows E, N, U.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 3, 3> enu_basis(const GroundStation& station) {
  using std::cos;
  using std::sin;
  const Scalar lat = Scalar(station.latitude_deg * kDegToRad);
  const Scalar lon = Scalar(station.longitude_deg * kDegToRad);
  Eigen::Matrix<Scalar, 3, 3> basis;
  basis << -sin(lon), cos(lon), Scalar(0),
           -sin(lat) * cos(lon), -sin(lat) * sin(lon), cos(lat),
           cos(lat) * cos(lon), cos(lat) * sin(lon), sin(lat);
  return basis;
}

/// Topocentric view of an Earth-fixed point from a station whose ECEF position
/// and ENU basis are already known.
template <typename DerivedA, typename DerivedB, typename DerivedC>
Topocentric topocentric_from(const Eigen::MatrixBase<DerivedA>& station_ecef,
                             const Eigen::MatrixBase<DerivedB>& enu,
                             const Eigen::MatrixBase<DerivedC>& sat_ecef) {
  const Vector3<double> los = sat_ecef - station_ecef;
  const double range = los.norm();
  if (!(range > 0.0)) throw GeometryError("zero range between station and satellite");
  const Vector3<double> local = enu * los;
  Topocentric out;
  out.range_km = range;
  out.elevation_deg = std::asin(std::clamp(local.z() / range, -1.0, 1.0)) * kRadToDeg;
  double az = std::atan2(local.x(), local.y()) * kRadToDeg;
  if (az < 0.0) az += 360.0;
  out.azimuth_deg = az >= 360.0 ? 0.0 : az;
  return out;
}

template <typename Derived>
Topocentric topocentric(const GroundStation& station, const Eigen::MatrixBase<Derived>& sat_ecef) {
  return topocentric_from(geodetic_to_ecef(station), enu_basis(station), sat_ecef);
}

/// Inverse of `topocentric`: the Earth-fixed point seen at (az, el, range).
inline Vector3<double> topocentric_to_ecef(const GroundStation& station, const Topocentric& topo) {
  const double az = topo.azimuth_deg * kDegToRad;
  const double el = topo.elevation_deg * kDegToRad;
  const Vector3<double> local(std::cos(el) * std::sin(az), std::cos(el) * std::cos(az),
                              std::sin(el));
  return geodetic_to_ecef(station) + enu_basis(station).transpose() * (topo.range_km * local);
}

/// Angle in degrees between two directions, robust near 0 and 180.
template <typename DerivedA, typename DerivedB>
double angle_between_deg(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b)) * kRadToDeg;
}

/// Off-boresight angle phi at the station between the line of sight to the
/// boresight satellite and the line of sight to another satellite.
template <typename DerivedS, typename DerivedA, typename DerivedB>
double off_boresight_angle_from(const Eigen::MatrixBase<DerivedS>& station_ecef,
                                const Eigen::MatrixBase<DerivedA>& boresight_sat_ecef,
                                const Eigen::MatrixBase<DerivedB>& other_sat_ecef) {
  const Vector3<double> to_boresight = boresight_sat_ecef - station_ecef;
  const Vector3<double> to_other = other_sat_ecef - station_ecef;
  if (!(to_boresight.norm() > 0.0) || !(to_other.norm() > 0.0)) {
    throw GeometryError("zero-length line of sight in off-boresight angle");
  }
  return angle_between_deg(to_boresight, to_other);
}

template <typename DerivedA, typename DerivedB>
double off_boresight_angle(const GroundStation& station,
                           const Eigen::MatrixBase<DerivedA>& boresight_sat_ecef,
                           const Eigen::MatrixBase<DerivedB>& other_sat_ecef) {
  return off_boresight_angle_from(geodetic_to_ecef(station), boresight_sat_ecef, other_sat_ecef);
}

/// Strictly above the mask.
inline bool visible(const Topocentric& topo, double mask_deg = 15.0) {
  return topo.elevation_deg > mask_deg;
}

}  // namespace leojam
