#include <doctest.h>

#include <cmath>
#include <random>

#include "leojam/constants.hpp"
#include "leojam/errors.hpp"
#include "leojam/geometry.hpp"

using namespace leojam;

TEST_CASE("GMST polynomial") {
  // Published IAU 1982 form in degrees, T in Julian centuries of UT1.
  auto oracle = [](double jd) {
    const double t = (jd - 2451545.0) / 36525.0;
    double g = 280.46061837 + 360.98564736629 * (jd - 2451545.0) + 0.000387933 * t * t - t * t * t / 38710000.0;
    g = std::fmod(g, 360.0);
    return g < 0 ? g + 360.0 : g;
  };
  CHECK(gmst_deg(UtcInstant::j2000()) == doctest::Approx(280.4606).epsilon(0.001 / 280.0));
  CHECK(gmst_deg(UtcInstant::j2000()) == doctest::Approx(oracle(2451545.0)).epsilon(1e-9));
  const auto t = UtcInstant::parse_iso8601("2024-03-20T06:30:00Z");
  CHECK(gmst_deg(t) == doctest::Approx(oracle(2451545.0 + t.seconds_since_j2000 / 86400.0)).epsilon(1e-8));

  const double g0 = gmst_deg(t);
  const double full = gmst_deg(t + kSiderealDaySeconds);
  CHECK(std::abs(std::remainder(full - g0, 360.0)) < 1e-3);
  const double half = gmst_deg(t + kSiderealDaySeconds / 2.0);
  CHECK(std::abs(std::remainder(half - g0 - 180.0, 360.0)) < 1e-3);
}

TEST_CASE("geodetic to ECEF") {
  const auto origin = geodetic_to_ecef(GroundStation{"o", 0.0, 0.0, 0.0});
  CHECK((origin - Eigen::Vector3d(6378.137, 0, 0)).norm() < 1e-9);
  const auto pole = geodetic_to_ecef(GroundStation{"p", 90.0, 33.0, 0.0});
  CHECK((pole - Eigen::Vector3d(0, 0, 6356.7523)).norm() < 1e-4);
  const double r = geodetic_to_ecef(GroundStation{"s", 59.3, 18.1, 0.0}).norm();
  CHECK(r > 6356.75);
  CHECK(r < 6378.14);
  // Templated on scalar.
  const Vector3<float> f = geodetic_to_ecef<float>(GroundStation{"o", 0.0, 0.0, 0.0});
  CHECK(f.x() == doctest::Approx(6378.137f));
}

TEST_CASE("ECI to ECEF rotation") {
  EciState s;
  s.position_km = Eigen::Vector3d(7000.0, 0.0, 0.0);
  // Find an instant where GMST is close to 90 deg: a quarter sidereal day after a zero crossing.
  const double g0 = gmst_deg(UtcInstant{});
  const UtcInstant zero{-g0 / 360.0 * kSiderealDaySeconds};
  s.time = zero;
  CHECK((eci_to_ecef(s) - s.position_km).norm() < 1e-3);
  s.time = zero + kSiderealDaySeconds / 4.0;
  CHECK((eci_to_ecef(s) - Eigen::Vector3d(0.0, -7000.0, 0.0)).norm() < 1e-2);
  s.position_km = Eigen::Vector3d(1234.0, -5678.0, 910.0);
  CHECK(eci_to_ecef(s).norm() == doctest::Approx(s.position_km.norm()).epsilon(1e-14));
}

TEST_CASE("topocentric zenith and horizon") {
  const GroundStation st{"x", 35.0, -100.0, 0.0};
  const Eigen::Vector3d pos = geodetic_to_ecef(st);
  const Eigen::Vector3d up = enu_basis(st).row(2).transpose();
  const auto zen = topocentric(st, pos + 550.0 * up);
  CHECK(zen.elevation_deg == doctest::Approx(90.0).epsilon(1e-9));
  CHECK(zen.range_km == doctest::Approx(550.0).epsilon(1e-9));

  const auto below = topocentric(st, pos - 100.0 * up + 10.0 * Eigen::Vector3d(enu_basis(st).row(0).transpose()));
  CHECK(below.elevation_deg < 0.0);
  CHECK_THROWS_AS(topocentric(st, pos), GeometryError);

  const Eigen::Vector3d north = enu_basis(st).row(1).transpose();
  const Eigen::Vector3d east = enu_basis(st).row(0).transpose();
  CHECK(topocentric(st, pos + 100.0 * north).azimuth_deg == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(topocentric(st, pos + 100.0 * east).azimuth_deg == doctest::Approx(90.0));
}

TEST_CASE("GEO over an equatorial station") {
  const GroundStation st{"eq", 0.0, 25.0, 0.0};
  const double lon = 25.0 * kDegToRad;
  const Eigen::Vector3d geo = 42164.169 * Eigen::Vector3d(std::cos(lon), std::sin(lon), 0.0);
  const auto t = topocentric(st, geo);
  CHECK(t.elevation_deg == doctest::Approx(90.0).epsilon(1e-9));
  CHECK(t.range_km == doctest::Approx(42164.169 - 6378.137).epsilon(1e-12));

  // Closed-form slant range for a station on the equator, satellite offset in longitude.
  const double dl = 30.0 * kDegToRad;
  const Eigen::Vector3d off = 42164.169 * Eigen::Vector3d(std::cos(lon + dl), std::sin(lon + dl), 0.0);
  const double oracle = std::sqrt(42164.169 * 42164.169 + 6378.137 * 6378.137 -
                                  2 * 42164.169 * 6378.137 * std::cos(dl));
  CHECK(topocentric(st, off).range_km == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("range is frame independent") {
  const GroundStation st{"x", -33.9, 18.4, 20.0};
  const UtcInstant t = UtcInstant::parse_iso8601("2024-03-20T03:00:00Z");
  const Eigen::Vector3d sat_ecef(3000.0, 5000.0, -3500.0);
  const Eigen::Matrix3d r = eci_to_ecef_rotation(t);
  const Eigen::Vector3d sat_eci = r.transpose() * sat_ecef;
  const Eigen::Vector3d st_eci = r.transpose() * geodetic_to_ecef(st);
  CHECK((sat_eci - st_eci).norm() == doctest::Approx(topocentric(st, sat_ecef).range_km).epsilon(1e-13));
}

TEST_CASE("az/el/range round trip") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GroundStation st{"x", 59.3, 18.07, 30.0};
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d sat = Eigen::Vector3d(u(rng), u(rng), u(rng)) * 20000.0;
    const auto topo = topocentric(st, sat);
    CHECK((topocentric_to_ecef(st, topo) - sat).norm() < 1e-6);
    CHECK(topo.elevation_deg >= -90.0);
    CHECK(topo.elevation_deg <= 90.0);
  }
}

TEST_CASE("GEO topocentric coordinates are fixed") {
  const GroundStation st{"x", 44.94, -123.04, 0.0};
  const auto geo = place_geo(-98.0, UtcInstant{});
  const auto first = topocentric(st, eci_to_ecef(propagate(geo, 0.0)));
  for (double t = 3600.0; t <= 86400.0; t += 3600.0) {
    const auto now = topocentric(st, eci_to_ecef(propagate(geo, t)));
    CHECK(std::abs(now.elevation_deg - first.elevation_deg) < 0.01);
    CHECK(std::abs(now.azimuth_deg - first.azimuth_deg) < 0.01);
    CHECK(std::abs(now.range_km - first.range_km) < 1.0);
  }
}

TEST_CASE("off-boresight angle") {
  const GroundStation st{"x", 10.0, 20.0, 0.0};
  const Eigen::Vector3d pos = geodetic_to_ecef(st);
  const Eigen::Matrix3d enu = enu_basis(st);
  const Eigen::Vector3d zenith = pos + 1000.0 * Eigen::Vector3d(enu.row(2).transpose());
  const Eigen::Vector3d horizon = pos + 1000.0 * Eigen::Vector3d(enu.row(0).transpose());
  CHECK(off_boresight_angle(st, zenith, zenith) == 0.0);
  CHECK(off_boresight_angle(st, zenith, horizon) == doctest::Approx(90.0));
  CHECK_THROWS_AS(off_boresight_angle(st, pos, zenith), GeometryError);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const Eigen::Vector3d a = pos + 5000.0 * Eigen::Vector3d(u(rng), u(rng), u(rng));
    const Eigen::Vector3d b = pos + 5000.0 * Eigen::Vector3d(u(rng), u(rng), u(rng));
    const Eigen::Vector3d c = pos + 5000.0 * Eigen::Vector3d(u(rng), u(rng), u(rng));
    const double ab = off_boresight_angle(st, a, b);
    CHECK(ab == doctest::Approx(off_boresight_angle(st, b, a)).epsilon(1e-14));
    CHECK(off_boresight_angle(st, a, c) <= ab + off_boresight_angle(st, b, c) + 1e-9);
    CHECK(ab >= 0.0);
    CHECK(ab <= 180.0);
  }
}

TEST_CASE("visibility is strict") {
  CHECK_FALSE(visible(Topocentric{0.0, 15.0, 1000.0}));
  CHECK(visible(Topocentric{0.0, 15.0000001, 1000.0}));
  CHECK(visible(Topocentric{0.0, 90.0, 1000.0}, 89.9));
  CHECK_FALSE(visible(Topocentric{0.0, -5.0, 1000.0}));
}

TEST_CASE("station validation") {
  CHECK_THROWS_AS(GroundStation({"bad", 91.0, 0.0, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS(GroundStation({"bad", 0.0, 190.0, 0.0}).validate(), ConfigError);
}
