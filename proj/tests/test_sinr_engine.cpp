#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "leojam/errors.hpp"
#include "leojam/presets.hpp"
#include "leojam/sinr_engine.hpp"

using namespace leojam;

namespace {

const UtcInstant kStart = UtcInstant::parse_iso8601("2024-03-20T00:00:00Z");

Scenario small_scenario(const std::string& attacker = "starlink_first_group", double hours = 2.0) {
  const auto& victim = find_preset("inmarsat_gx");
  const auto& leo = find_preset(attacker);
  Scenario sc;
  sc.victim = Constellation::from_source(victim.name, victim.source, victim.link, kStart);
  sc.attacker = Constellation::from_source(leo.name, leo.source, leo.link, kStart);
  const auto& aws = find_station_preset("aws10").stations;
  sc.stations = {aws[3], aws[4], aws[9]};  // Stockholm, Manama, Punta Arenas
  sc.start = kStart;
  sc.duration_s = hours * 3600.0;
  return sc;
}

}  // namespace

TEST_CASE("combine_sinr") {
  CHECK(combine_sinr(-96.02, {}, -120.0) == doctest::Approx(23.98).epsilon(1e-12));
  const std::vector<double> one{-96.0};
  CHECK(combine_sinr(-96.0, one, -300.0) == doctest::Approx(0.0).epsilon(1e-12));
  const std::vector<double> two{-100.0, -100.0};
  const std::vector<double> single{-100.0};
  const double drop = combine_sinr(-96.0, single, -300.0) - combine_sinr(-96.0, two, -300.0);
  CHECK(drop == doctest::Approx(10.0 * std::log10(std::sqrt(2.0))).epsilon(1e-12));
  CHECK(drop == doctest::Approx(1.505).epsilon(1e-3));

  const std::vector<double> many{-110.0, -104.0, -115.0, -108.5};
  CHECK(combine_sinr(-96.0, many, -120.0) >=
        combine_sinr(-96.0, many, -120.0, InterferenceCombiner::kPowerSum));
  double sum_w = 0.0;
  for (double x : many) sum_w += std::pow(10.0, x / 10.0);
  CHECK(combine_interference_w(many, InterferenceCombiner::kPowerSum) == doctest::Approx(sum_w).epsilon(1e-14));
}

TEST_CASE("adding an interferer never raises SINR") {
  std::vector<double> list;
  double prev = combine_sinr(-96.0, list, -120.0);
  for (double x : {-130.0, -100.0, -140.0, -99.0, -200.0}) {
    list.push_back(x);
    const double now = combine_sinr(-96.0, list, -120.0);
    CHECK(now <= prev);
    CHECK(combine_sinr(-96.0, list, -120.0, InterferenceCombiner::kPowerSum) <= now);
    prev = now;
  }
}

TEST_CASE("record counts and record invariants") {
  Scenario sc = small_scenario("cubesat_walker", 24.0);
  sc.stations.resize(1);
  const auto series = run_scenario(sc);
  REQUIRE(series.size() == 1);
  CHECK(series[0].records.size() == 8640);
  const auto& recs = series[0].records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    CHECK(r.time == sc.start + 10.0 * static_cast<double>(i));
    REQUIRE(r.service);
    const double i_w = std::isfinite(r.interference_dbw) ? db_to_watts(r.interference_dbw) : 0.0;
    CHECK(r.sinr_db == doctest::Approx(r.signal_dbw - watts_to_db(db_to_watts(r.noise_dbw) + i_w)).epsilon(1e-12));
    CHECK(r.strongest_interferer_dbw <= r.interference_dbw + 1e-12);
  }
}

TEST_CASE("an attacker that is switched off leaves the baseline") {
  Scenario sc = small_scenario();
  Scenario quiet = sc;
  quiet.attacker.link.eirp_dbw = -300.0;
  Scenario none = sc;
  none.attacker = Constellation::from_source("none", GeoSource{}, LinkParams{0.0}, kStart);
  const auto a = run_scenario(quiet);
  const auto b = run_scenario(none);
  for (std::size_t s = 0; s < a.size(); ++s) {
    for (std::size_t i = 0; i < a[s].records.size(); ++i) {
      CHECK(std::abs(a[s].records[i].sinr_db - b[s].records[i].sinr_db) < 1e-6);
      CHECK(b[s].records[i].n_visible_interferers == 0);
    }
  }
}

TEST_CASE("baseline carrier is the closest GEO at full gain") {
  Scenario sc = small_scenario();
  const auto series = run_scenario(sc);
  const double noise = noise_power_dbw(sc.noise);
  for (const auto& s : series) {
    for (const auto& r : s.records) {
      REQUIRE(r.service);
      CHECK(r.noise_dbw == noise);
      CHECK(r.signal_dbw < 70.0 + 44.0 - fspl_db(35786.0, 19.2e9) - 0.35 + 1e-9);
      CHECK(r.signal_dbw > -98.0);
    }
  }
}

TEST_CASE("determinism across thread counts") {
  const Scenario sc = small_scenario();
  const auto a = run_scenario(sc, ExecutionOptions{1});
  const auto b = run_scenario(sc, ExecutionOptions{4});
  const auto c = run_scenario(sc, ExecutionOptions{3});
  for (std::size_t s = 0; s < a.size(); ++s) {
    for (std::size_t i = 0; i < a[s].records.size(); ++i) {
      const auto& x = a[s].records[i];
      for (const auto* other : {&b[s].records[i], &c[s].records[i]}) {
        CHECK(std::memcmp(&x.sinr_db, &other->sinr_db, sizeof(double)) == 0);
        CHECK(std::memcmp(&x.interference_dbw, &other->interference_dbw, sizeof(double)) == 0);
      }
    }
  }
  const auto ca = build_geometry_cache(sc, ExecutionOptions{1});
  const auto cb = build_geometry_cache(sc, ExecutionOptions{4});
  CHECK(ca.fingerprint == cb.fingerprint);
  for (std::size_t s = 0; s < ca.stations.size(); ++s) {
    CHECK(ca.stations[s].contribution_db == cb.stations[s].contribution_db);
    CHECK(ca.stations[s].interferer == cb.stations[s].interferer);
  }
}

TEST_CASE("cache reconstruction matches the direct run") {
  const Scenario sc = small_scenario();
  const auto cache = build_geometry_cache(sc);
  CHECK(cache.step_count == 720);
  CHECK(cache.attacker_count == 1584);
  std::size_t visible = 0;
  for (const auto& r : run_scenario(sc)) {
    for (const auto& rec : r.records) visible += rec.n_visible_interferers;
  }
  CHECK(cache.entry_count() == visible);

  for (double eirp : {sc.attacker.link.eirp_dbw, 25.0, 61.5}) {
    Scenario direct = sc;
    direct.attacker.link.eirp_dbw = eirp;
    const auto a = run_scenario(direct);
    const auto b = reconstruct_series(cache, sc, eirp);
    for (std::size_t s = 0; s < a.size(); ++s) {
      for (std::size_t i = 0; i < a[s].records.size(); ++i) {
        CHECK(std::abs(a[s].records[i].sinr_db - b[s].records[i].sinr_db) < 1e-9);
        CHECK(std::abs(a[s].records[i].signal_dbw - b[s].records[i].signal_dbw) < 1e-9);
      }
    }
  }
}

TEST_CASE("EIRP shifts every interferer by the same amount") {
  const Scenario sc = small_scenario();
  const auto cache = build_geometry_cache(sc);
  const auto lo = reconstruct_series(cache, sc, 30.0);
  const auto hi = reconstruct_series(cache, sc, 37.0);
  for (std::size_t s = 0; s < lo.size(); ++s) {
    for (std::size_t i = 0; i < lo[s].records.size(); ++i) {
      if (lo[s].records[i].n_visible_interferers == 0) continue;
      CHECK(hi[s].records[i].strongest_interferer_dbw - lo[s].records[i].strongest_interferer_dbw ==
            doctest::Approx(7.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("sweep curves") {
  const Scenario sc = small_scenario();
  const auto cache = build_geometry_cache(sc);
  std::vector<double> grid;
  for (double e = -300.0; e <= 100.0; e += 25.0) grid.push_back(e);
  const auto sweep = sweep_power(cache, grid, sc);
  REQUIRE(sweep.stations.size() == 3);
  for (const auto& st : sweep.stations) {
    CHECK(st.jamming_pct.front() == 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(st.jamming_pct[i] >= st.jamming_pct[i - 1]);
  }

  const double e = sc.attacker.link.eirp_dbw;
  const std::vector<double> single{e};
  const auto at = sweep_power(cache, single, sc);
  const auto direct = run_scenario(sc);
  for (std::size_t s = 0; s < direct.size(); ++s) {
    std::size_t jammed = 0;
    for (const auto& r : direct[s].records) jammed += r.sinr_db < sc.jam_threshold_db;
    CHECK(at.stations[s].jamming_pct[0] ==
          doctest::Approx(100.0 * static_cast<double>(jammed) / static_cast<double>(direct[s].records.size())));
  }

  Scenario other = sc;
  other.elevation_mask_deg = 10.0;
  CHECK_THROWS_AS(sweep_power(cache, grid, other), ConsistencyError);
  // Attacker EIRP is not part of the cached geometry.
  Scenario louder = sc;
  louder.attacker.link.eirp_dbw += 10.0;
  CHECK_NOTHROW(sweep_power(cache, grid, louder));
}

TEST_CASE("EIRP search inverts the pooled curve") {
  const Scenario sc = small_scenario();
  const auto cache = build_geometry_cache(sc);
  const double e = eirp_for_jamming_pct(cache, sc, 10.0);
  const std::vector<double> probe{e - 0.01, e + 0.01};
  const auto sweep = sweep_power(cache, probe, sc);
  CHECK(sweep.pooled_pct[0] < 10.0);
  CHECK(sweep.pooled_pct[1] >= 10.0);
}

TEST_CASE("fingerprint tracks inputs") {
  const Scenario sc = small_scenario();
  CHECK(scenario_fingerprint(sc) == scenario_fingerprint(small_scenario()));
  Scenario moved = sc;
  moved.stations[0].latitude_deg += 1e-9;
  CHECK(scenario_fingerprint(moved) != scenario_fingerprint(sc));
  Scenario shorter = sc;
  shorter.step_s = 5.0;
  CHECK(scenario_fingerprint(shorter) != scenario_fingerprint(sc));
  CHECK(scenario_fingerprint(sc).size() == 64);
}

TEST_CASE("scenario validation") {
  Scenario sc = small_scenario();
  sc.step_s = 0.0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = small_scenario();
  sc.duration_s = 5.0;
  CHECK_THROWS_AS(sc.validate(), ConfigError);
  sc = small_scenario();
  sc.stations.clear();
  CHECK_THROWS_AS(run_scenario(sc), ConfigError);
}

TEST_CASE("combiner names") {
  CHECK(combiner_from_string("rss") == InterferenceCombiner::kRootSumSquare);
  CHECK(combiner_from_string("sum") == InterferenceCombiner::kPowerSum);
  CHECK_THROWS_AS(combiner_from_string("max"), ConfigError);
}

TEST_CASE("geometry fingerprint ignores only the attacker EIRP") {
  const Scenario sc = small_scenario();
  Scenario louder = sc;
  louder.attacker.link.eirp_dbw += 10.0;
  CHECK(geometry_fingerprint(louder) == geometry_fingerprint(sc));
  CHECK(scenario_fingerprint(louder) != scenario_fingerprint(sc));
  Scenario retuned = sc;
  retuned.attacker.link.frequency_hz *= 2.0;
  CHECK(geometry_fingerprint(retuned) != geometry_fingerprint(sc));
}
