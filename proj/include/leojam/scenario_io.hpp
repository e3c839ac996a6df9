#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "leojam/analysis.hpp"
#include "leojam/sinr_engine.hpp"

namespace leojam {

/// A scenario file with the analysis settings that travel alongside it.
struct ScenarioDocument {
  Scenario scenario;
  GnssConfig gnss;
  JammingAveraging averaging = JammingAveraging::kPooled;

  bool operator==(const ScenarioDocument&) const = default;
};

/// Reads a scenario file. Relative TLE paths resolve against the file's directory.
/// Throws ConfigError (with the offending key path) or ParseError.
ScenarioDocument load_scenario_document(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

ScenarioDocument parse_scenario(std::string_view text,
                                const std::filesystem::path& base_dir = std::filesystem::path{});

/// Fully resolved text form: presets are written out as explicit sources, so
/// parse_scenario(serialize_scenario(d)) reproduces every field.
std::string serialize_scenario(const ScenarioDocument& document);
std::string serialize_scenario(const Scenario& scenario);

}  // namespace leojam
