#include "leojam/constellation.hpp"

#include "leojam/errors.hpp"

namespace leojam {

std::vector<KeplerianElements> expand_source(const ConstellationSource& source, UtcInstant epoch) {
  std::vector<KeplerianElements> out;
  if (const auto* shells = std::get_if<std::vector<WalkerShell>>(&source)) {
    for (const WalkerShell& shell : *shells) {
      auto sats = generate_walker(shell.spec, epoch);
      if (shell.keep > sats.size()) {
        throw ConfigError("walker shell keeps " + std::to_string(shell.keep) +
                          " satellites but only generates " + std::to_string(sats.size()));
      }
      if (shell.keep != 0) sats.resize(shell.keep);
      out.insert(out.end(), sats.begin(), sats.end());
    }
  } else if (const auto* tle = std::get_if<TleSource>(&source)) {
    for (auto& named : load_tle_file(tle->path)) out.push_back(named.elements);
  } else {
    for (double lon : std::get<GeoSource>(source).longitudes_deg) {
      out.push_back(place_geo(lon, epoch));
    }
  }
  // An explicit empty longitude list is the "no attacker" baseline.
  if (out.empty() && !std::holds_alternative<GeoSource>(source)) {
    throw ConfigError("constellation source produced no satellites");
  }
  return out;
}

Constellation Constellation::from_source(std::string name, ConstellationSource source,
                                         LinkParams link, UtcInstant epoch) {
  link.validate();
  Constellation c;
  c.name = std::move(name);
  c.satellites = expand_source(source, epoch);
  c.source = std::move(source);
  c.link = link;
  return c;
}

}  // namespace leojam
