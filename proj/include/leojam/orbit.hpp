#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "leojam/time.hpp"

namespace leojam {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

/// Mean orbital elements of one satellite at its epoch.
///
/// For circular orbits the argument of perigee is meaningless and kept at zero;
/// `arg_latitude_deg` then carries the full along-track phase. For eccentric
/// orbits `arg_latitude_deg` is the mean argument of latitude, perigee argument
/// plus mean anomaly.
struct KeplerianElements {
  double semi_major_axis_km = 0.0;
  double eccentricity = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double arg_latitude_deg = 0.0;
  double arg_perigee_deg = 0.0;
  UtcInstant epoch;

  double mean_motion_rad_s() const;
  double period_s() const;
  /// Throws ConfigError when the elements cannot describe a real orbit.
  void validate() const;

  bool operator==(const KeplerianElements&) const = default;
};

/// Walker-delta pattern T/P/F at a single altitude and inclination.
struct WalkerSpec {
  std::size_t total_satellites = 0;
  std::size_t planes = 0;
  std::size_t phasing_factor = 0;
  double inclination_deg = 0.0;
  double altitude_km = 0.0;

  void validate() const;

  bool operator==(const WalkerSpec&) const = default;
};

struct EciState {
  Vector3<double> position_km = Vector3<double>::Zero();
  UtcInstant time;
};

/// Plane-major: all satellites of plane 0 first, then plane 1, and so on.
std::vector<KeplerianElements> generate_walker(const WalkerSpec& spec, UtcInstant epoch);

/// Parses one two-line element set. Lines must be 69 characters with valid
/// modulo-10 checksums; a trailing '\r' is tolerated.
KeplerianElements parse_tle(std::string_view line1, std::string_view line2);

/// Inverse of parse_tle up to the printed precision of each field.
std::pair<std::string, std::string> format_tle(const KeplerianElements& elements,
                                               int catalog_number = 99999);

struct NamedElements {
  std::string name;
  KeplerianElements elements;
};

/// Two-line or three-line (name header) TLE text, several sets back to back.
std::vector<NamedElements> parse_tle_text(std::string_view text);
std::vector<NamedElements> load_tle_file(const std::string& path);

/// Ideal geostationary slot whose sub-satellite longitude is `longitude_deg`.
KeplerianElements place_geo(double longitude_deg, UtcInstant epoch);

/// Two-body position at epoch + dt_s.
EciState propagate(const KeplerianElements& elements, double dt_s);

/// Same orbit re-expressed at epoch + dt_s.
KeplerianElements advance_epoch(const KeplerianElements& elements, double dt_s);

/// Solves M = E - e sin E for E by Newton iteration.
double solve_kepler(double mean_anomaly_rad, double eccentricity);

/// Precomputed orbital-plane basis for fast repeated evaluation of one orbit.
/// `propagate` is implemented in terms of this, so both paths agree bit for bit.
class OrbitPropagator {
 public:
  explicit OrbitPropagator(const KeplerianElements& elements);

  Vector3<double> position_at(UtcInstant t) const { return position_after(t - epoch_); }
  Vector3<double> position_after(double dt_s) const;

  const KeplerianElements& elements() const { return elements_; }

 private:
  KeplerianElements elements_;
  UtcInstant epoch_;
  double mean_motion_ = 0.0;
  double phase0_ = 0.0;  // argument of latitude (circular) or mean anomaly (eccentric), rad
  double arg_perigee_ = 0.0;
  Vector3<double> p_axis_;  // ascending-node direction
  Vector3<double> q_axis_;  // 90 deg ahead in the orbit plane
};

double normalize_degrees(double angle_deg);

}  // namespace leojam
