#include "leojam/presets.hpp"

#include "leojam/errors.hpp"

namespace leojam {
namespace {

constexpr double kKaDownlinkHz = 19.2e9;
constexpr double kChannelBandwidthHz = 250e6;
constexpr double kClearSkyAttenuationDb = 0.35;

LinkParams ka_link(double eirp_dbw) {
  return {eirp_dbw, kKaDownlinkHz, kChannelBandwidthHz, kClearSkyAttenuationDb};
}

std::vector<WalkerShell> walker(std::size_t total, std::size_t planes, std::size_t phasing,
                                double inclination_deg, double altitude_km, std::size_t keep = 0) {
  return {WalkerShell{WalkerSpec{total, planes, phasing, inclination_deg, altitude_km}, keep}};
}

std::vector<ConstellationPreset> make_presets() {
  std::vector<ConstellationPreset> p;

  p.push_back({"inmarsat_gx", "Inmarsat Global Xpress victim fleet, ideal geostationary slots",
               "EIRP 70 dBW, 19.2 GHz, 250 MHz, 0.35 dB are published values; the five slot "
               "longitudes are an approximate global-coverage placement, not catalogue positions",
               GeoSource{{-98.0, -55.0, 25.0, 63.0, 180.0}}, ka_link(70.0), 80.0});

  p.push_back({"dove", "Planet Labs Dove imaging constellation, 150 satellites at 530 km",
               "count, altitude and EIRP 8.2 dBW are published; the 10x15 sun-synchronous "
               "(97.5 deg) Walker layout stands in for the real flock orbits",
               walker(150, 10, 1, 97.5, 530.0), ka_link(8.2), 15.0});

  p.push_back({"cubesat_walker", "Hypothetical CubeSat Walker constellation 396/11/1 at 550 km",
               "count, planes, altitude and EIRP 6 dBW are published; inclination 53 deg and "
               "phasing factor 1 are assumptions",
               walker(396, 11, 1, 53.0, 550.0), ka_link(6.0), std::nullopt});

  p.push_back({"starlink_first_group", "Starlink first shell, 1584 satellites (72 x 22) at 550 km, 53.2 deg",
               "count, altitude, inclination and EIRP 39.68 dBW are published; 72x22 with "
               "phasing factor 1 follows the public filing layout",
               walker(1584, 72, 1, 53.2, 550.0), ka_link(39.68), 45.0});

  {
    std::vector<WalkerShell> shells;
    shells.push_back({WalkerSpec{1584, 72, 1, 53.2, 550.0}, 0});
    shells.push_back({WalkerSpec{1600, 32, 1, 53.8, 1110.0}, 0});
    shells.push_back({WalkerSpec{400, 8, 1, 74.0, 1130.0}, 0});
    shells.push_back({WalkerSpec{375, 5, 1, 81.0, 1275.0}, 374});
    shells.push_back({WalkerSpec{450, 6, 1, 70.0, 1325.0}, 0});
    p.push_back({"starlink_phase1", "Starlink Phase 1, 4408 satellites in five shells",
                 "total 4408 and EIRP 39.68 dBW are published; the five-shell split follows the "
                 "public filing structure and is an approximation (81 deg shell keeps 374 of 375)",
                 shells, ka_link(39.68), 45.0});
  }

  p.push_back({"oneweb_phase1", "OneWeb Phase 1, 716 satellites at 1200 km, near-polar",
               "count, altitude and EIRP 45.26 dBW are published; the 36x20 layout at 87.9 deg "
               "is an approximation with the last 4 of 720 slots left empty",
               walker(720, 36, 1, 87.9, 1200.0, 716), ka_link(45.26), 51.0});

  p.push_back({"oneweb_phase2", "OneWeb Phase 2, 6372 satellites at 1200 km",
               "count, altitude and EIRP 45.26 dBW are published; one 36x177 near-polar "
               "(87.9 deg) shell is an approximation",
               walker(6372, 36, 1, 87.9, 1200.0), ka_link(45.26), 51.0});
  return p;
}

std::vector<StationPreset> make_station_presets() {
  StationPreset aws;
  aws.name = "aws10";
  aws.provenance =
      "Dublin, Stockholm, Honolulu and Manama latitudes are published; all other coordinates "
      "are approximate city locations for cloud ground-station regions";
  aws.stations = {
      {"Salem_Oregon", 44.94, -123.04, 0.0},
      {"Columbus_Ohio", 39.96, -83.00, 0.0},
      {"Dublin_Ireland", 53.30, -6.26, 0.0},
      {"Stockholm_Sweden", 59.30, 18.07, 0.0},
      {"Manama_Bahrain", 26.20, 50.59, 0.0},
      {"Honolulu_Hawaii", 21.30, -157.86, 0.0},
      {"CapeTown_SouthAfrica", -33.92, 18.42, 0.0},
      {"Sydney_Australia", -33.87, 151.21, 0.0},
      {"Seoul_SouthKorea", 37.57, 126.98, 0.0},
      {"PuntaArenas_Chile", -53.16, -70.91, 0.0},
  };
  return {aws};
}

}  // namespace

std::size_t ConstellationPreset::satellite_count() const {
  if (const auto* shells = std::get_if<std::vector<WalkerShell>>(&source)) {
    std::size_t n = 0;
    for (const auto& s : *shells) n += s.count();
    return n;
  }
  if (const auto* geo = std::get_if<GeoSource>(&source)) return geo->longitudes_deg.size();
  return 0;
}

const std::vector<ConstellationPreset>& builtin_presets() {
  static const std::vector<ConstellationPreset> presets = make_presets();
  return presets;
}

const std::vector<StationPreset>& builtin_station_presets() {
  static const std::vector<StationPreset> presets = make_station_presets();
  return presets;
}

const ConstellationPreset& find_preset(std::string_view name) {
  std::string known;
  for (const auto& p : builtin_presets()) {
    if (p.name == name) return p;
    known += (known.empty() ? "" : ", ") + p.name;
  }
  throw ConfigError("unknown constellation preset '" + std::string(name) + "' (known: " + known + ")");
}

const StationPreset& find_station_preset(std::string_view name) {
  std::string known;
  for (const auto& p : builtin_station_presets()) {
    if (p.name == name) return p;
    known += (known.empty() ? "" : ", ") + p.name;
  }
  throw ConfigError("unknown station preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace leojam
