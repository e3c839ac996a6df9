#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leojam/constellation.hpp"
#include "leojam/geometry.hpp"

namespace leojam {

struct ConstellationPreset {
  std::string name;
  std::string description;
  /// Which values are taken from published figures and which are stand-ins.
  std::string provenance;
  ConstellationSource source;
  LinkParams link;
  /// EIRP listed in the constellation overview table, where it differs.
  std::optional<double> alternate_eirp_dbw;

  std::size_t satellite_count() const;
};

struct StationPreset {
  std::string name;
  std::string provenance;
  std::vector<GroundStation> stations;
};

const std::vector<ConstellationPreset>& builtin_presets();
const std::vector<StationPreset>& builtin_station_presets();

/// Throws ConfigError naming the known presets when `name` is not one of them.
const ConstellationPreset& find_preset(std::string_view name);
const StationPreset& find_station_preset(std::string_view name);

}  // namespace leojam
