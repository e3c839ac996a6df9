#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "leojam/orbit.hpp"
#include "leojam/rfmodel.hpp"

namespace leojam {

/// One Walker shell; `keep` truncates the plane-major list when a filing's
/// satellite count does not factor into whole planes (0 keeps everything).
struct WalkerShell {
  WalkerSpec spec;
  std::size_t keep = 0;

  std::size_t count() const { return keep == 0 ? spec.total_satellites : keep; }
  bool operator==(const WalkerShell&) const = default;
};

struct TleSource {
  std::string path;
  bool operator==(const TleSource&) const = default;
};

struct GeoSource {
  std::vector<double> longitudes_deg;
  bool operator==(const GeoSource&) const = default;
};

using ConstellationSource = std::variant<std::vector<WalkerShell>, TleSource, GeoSource>;

std::vector<KeplerianElements> expand_source(const ConstellationSource& source, UtcInstant epoch);

/// A set of satellites sharing one downlink.
struct Constellation {
  std::string name;
  ConstellationSource source;
  LinkParams link;
  std::vector<KeplerianElements> satellites;

  static Constellation from_source(std::string name, ConstellationSource source, LinkParams link,
                                   UtcInstant epoch);

  bool operator==(const Constellation&) const = default;
};

}  // namespace leojam
