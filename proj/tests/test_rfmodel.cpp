#include <doctest.h>

#include <cmath>
#include <random>

#include "leojam/errors.hpp"
#include "leojam/rfmodel.hpp"

using namespace leojam;

namespace {

// Free-space loss straight from its definition, distance in meters.
double fspl_oracle(double d_km, double f_hz) {
  return 20.0 * std::log10(4.0 * M_PI * d_km * 1e3 * f_hz / 299792458.0);
}

}  // namespace

TEST_CASE("free-space path loss") {
  CHECK(fspl_db(550.0, 19.2e9) == doctest::Approx(fspl_oracle(550.0, 19.2e9)).epsilon(1e-9));
  CHECK(fspl_db(550.0, 19.2e9) == doctest::Approx(172.93).epsilon(0.01 / 172.93));
  CHECK(fspl_db(35786.0, 19.2e9) == doctest::Approx(fspl_oracle(35786.0, 19.2e9)).epsilon(1e-9));
  CHECK(fspl_db(35786.0, 19.2e9) == doctest::Approx(209.19).epsilon(0.005 / 209.19));
  CHECK(fspl_db(1000.0, 1e9) - fspl_db(500.0, 1e9) == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(fspl_db(0.0, 1e9), DomainError);
  CHECK_THROWS_AS(fspl_db(10.0, -1.0), DomainError);

  double prev = 0.0;
  for (double d = 100.0; d < 50000.0; d *= 1.3) {
    const double l = fspl_db(d, 19.2e9);
    CHECK(l > prev);
    CHECK(fspl_db(d, 19.3e9) > l);
    prev = l;
  }
}

TEST_CASE("ERC derived constants") {
  const GainPattern p = GainPattern::erc(44.0);
  const double dl = std::pow(10.0, (44.0 - 7.7) / 20.0);
  CHECK(p.d_over_lambda == doctest::Approx(dl).epsilon(1e-12));
  CHECK(p.d_over_lambda == doctest::Approx(65.31).epsilon(1e-4));
  CHECK(p.g1_dbi == doctest::Approx(2.0 + 15.0 * std::log10(dl)).epsilon(1e-12));
  CHECK(p.g1_dbi == doctest::Approx(29.2).epsilon(1e-3));
  CHECK(p.phi_m_deg == doctest::Approx(20.0 / dl * std::sqrt(44.0 - p.g1_dbi)).epsilon(1e-12));
  CHECK(p.phi_m_deg == doctest::Approx(1.18).epsilon(5e-3));
  CHECK(p.g_max_dbi > p.g1_dbi);
}

TEST_CASE("ERC gain values") {
  const GainPattern p = GainPattern::erc(44.0);
  CHECK(gain_db(p, 0.0) == 44.0);
  CHECK(gain_db(p, 60.0) == -10.0);
  CHECK(gain_db(p, 48.0) == -10.0);
  const double dl = p.d_over_lambda;
  CHECK(gain_db(p, 20.0) == doctest::Approx(52.0 - 10.0 * std::log10(dl) - 25.0 * std::log10(20.0)));
  CHECK(gain_db(p, 20.0) == doctest::Approx(1.3).epsilon(0.05));
  CHECK(gain_db(p, 0.5) == doctest::Approx(44.0 - std::pow(dl * 0.5 / 20.0, 2)));
  CHECK(gain_db(p, 1.3) == doctest::Approx(p.g1_dbi));
  CHECK_THROWS_AS(gain_db(p, -0.1), DomainError);
  CHECK_THROWS_AS(gain_db(p, 180.1), DomainError);
}

TEST_CASE("ERC continuity, bounds and monotonicity") {
  const GainPattern p = GainPattern::erc(44.0);
  double prev = gain_db(p, 0.0);
  for (int i = 1; i <= 180000; ++i) {
    const double phi = i * 0.001;
    const double g = gain_db(p, phi);
    CHECK(std::isfinite(g));
    CHECK(g <= 44.0);
    CHECK(g >= -10.0);
    CHECK(g <= prev);
    if (phi <= p.phi_m_deg) CHECK(g < prev);
    // Away from the 48 deg back-lobe step the pattern never jumps by a dB.
    if (std::abs(phi - 48.0) > 0.001) CHECK(prev - g < 1.0);
    prev = g;
  }
  for (double edge : {p.phi_m_deg, p.sidelobe_start_deg()}) {
    CHECK(std::abs(gain_db(p, edge) - gain_db(p, std::nextafter(edge, 0.0))) < 1.0);
  }
}

TEST_CASE("ITU reference and constant patterns") {
  const GainPattern itu = GainPattern::itu_reference(44.0);
  CHECK(gain_db(itu, 0.0) == 44.0);
  CHECK(gain_db(itu, 0.2) == 44.0);
  CHECK(gain_db(itu, 10.0) == doctest::Approx(32.0 - 25.0));
  CHECK(gain_db(itu, 47.0) == doctest::Approx(32.0 - 25.0 * std::log10(47.0)));
  CHECK(gain_db(itu, 48.0) == -10.0);
  CHECK(gain_db(itu, 120.0) == -10.0);
  const GainPattern flat = GainPattern::constant(44.0);
  for (double phi : {0.0, 1.0, 30.0, 179.0}) CHECK(gain_db(flat, phi) == 44.0);
  CHECK(pattern_kind_from_string("itu") == PatternKind::kItuReference);
  CHECK(pattern_kind_from_string("erc") == PatternKind::kErc);
}

TEST_CASE("received power") {
  LinkParams link{70.0, 19.2e9, 250e6, 0.35};
  CHECK(received_power_dbw(link, 44.0, 209.19) == doctest::Approx(-95.54));
  CHECK(received_power_dbw(LinkParams{0.0, 1.0, 1.0, 0.0}, 0.0, 0.0) == 0.0);
  LinkParams hotter = link;
  hotter.eirp_dbw += 3.0;
  CHECK(received_power_dbw(hotter, 44.0, 200.0) - received_power_dbw(link, 44.0, 200.0) == doctest::Approx(3.0));
  CHECK(received_power_dbw(link, 45.0, 200.0) > received_power_dbw(link, 44.0, 200.0));
  CHECK(received_power_dbw(link, 44.0, 201.0) < received_power_dbw(link, 44.0, 200.0));
  LinkParams wetter = link;
  wetter.atmos_atten_db = 1.0;
  CHECK(received_power_dbw(wetter, 44.0, 200.0) < received_power_dbw(link, 44.0, 200.0));
}

TEST_CASE("thermal noise") {
  const double k = 1.380649e-23;
  CHECK(noise_power_dbw({290.0, 250e6}) == doctest::Approx(10.0 * std::log10(k * 290.0 * 250e6)).epsilon(1e-12));
  CHECK(noise_power_dbw({290.0, 250e6}) == doctest::Approx(-120.0).epsilon(0.01 / 120.0));
  CHECK(noise_power_dbw({290.0, 500e6}) - noise_power_dbw({290.0, 250e6}) == doctest::Approx(3.0103).epsilon(1e-4));
  CHECK(noise_power_dbw({580.0, 250e6}) == doctest::Approx(-116.99).epsilon(0.01 / 117.0));
  CHECK_THROWS_AS(NoiseParams({0.0, 1.0}).validate(), ConfigError);
}

TEST_CASE("dB and watts are inverses") {
  CHECK(db_to_watts(0.0) == 1.0);
  CHECK(db_to_watts(-120.0) == doctest::Approx(1e-12).epsilon(1e-12));
  CHECK_THROWS_AS(watts_to_db(0.0), DomainError);
  CHECK_THROWS_AS(watts_to_db(-1.0), DomainError);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-200.0, 100.0);
  int bad = 0;
  for (int i = 0; i < 1000000; ++i) {
    const double x = u(rng);
    if (std::abs(watts_to_db(db_to_watts(x)) - x) > 1e-12 * std::max(1.0, std::abs(x))) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("link parameter validation") {
  CHECK_THROWS_AS(LinkParams({10.0, 0.0, 1.0, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS(LinkParams({10.0, 1.0, 0.0, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS(LinkParams({10.0, 1.0, 1.0, -0.1}).validate(), ConfigError);
}

TEST_CASE("density to EIRP conversion") {
  CHECK(eirp_from_density_dbw(15.70, 250e6) == doctest::Approx(15.70 + 10.0 * std::log10(250e6 / 4e3)));
  CHECK(eirp_from_density_dbw(15.70, 250e6) == doctest::Approx(63.66).epsilon(1e-4));
}
