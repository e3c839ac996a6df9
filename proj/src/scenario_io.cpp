#include "leojam/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "leojam/errors.hpp"
#include "leojam/kvfile.hpp"
#include "leojam/presets.hpp"

namespace leojam {
namespace {

std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

/// Typed access to one section, remembering which keys were read so that
/// leftovers can be reported as unknown. Missing required keys are collected
/// rather than thrown one at a time.
class Section {
 public:
  Section(const kv::Table* table, std::string path, std::vector<std::string>& missing)
      : table_(table), path_(std::move(path)), missing_(missing) {}

  bool present() const { return table_ != nullptr; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const {
    return table_ != nullptr && table_->values.count(key) != 0;
  }

  const kv::Value* find(const std::string& key) {
    if (table_ == nullptr) return nullptr;
    seen_.insert(key);
    auto it = table_->values.find(key);
    return it == table_->values.end() ? nullptr : &it->second;
  }

  std::optional<double> number(const std::string& key) {
    const kv::Value* v = find(key);
    if (v == nullptr) return std::nullopt;
    if (const double* d = std::get_if<double>(&v->data)) return *d;
    fail(key, "expects a number");
  }

  double number_or(const std::string& key, double fallback) { return number(key).value_or(fallback); }

  std::optional<double> required_number(const std::string& key) {
    auto v = number(key);
    if (!v) missing_.push_back(join_path(path_, key));
    return v;
  }

  std::optional<std::string> string(const std::string& key) {
    const kv::Value* v = find(key);
    if (v == nullptr) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&v->data)) return *s;
    fail(key, "expects a quoted string");
  }

  std::optional<bool> boolean(const std::string& key) {
    const kv::Value* v = find(key);
    if (v == nullptr) return std::nullopt;
    if (const bool* b = std::get_if<bool>(&v->data)) return *b;
    fail(key, "expects true or false");
  }

  std::optional<std::vector<double>> numbers(const std::string& key) {
    const kv::Value* v = find(key);
    if (v == nullptr) return std::nullopt;
    const auto* arr = std::get_if<kv::Array>(&v->data);
    if (arr == nullptr) fail(key, "expects an array of numbers");
    std::vector<double> out;
    for (const kv::Value& item : *arr) {
      const double* d = std::get_if<double>(&item.data);
      if (d == nullptr) fail(key, "expects an array of numbers");
      out.push_back(*d);
    }
    return out;
  }

  std::vector<const kv::Table*> repeated(const std::string& key) {
    std::vector<const kv::Table*> out;
    if (table_ == nullptr) return out;
    seen_.insert(key);
    if (auto it = table_->arrays.find(key); it != table_->arrays.end()) {
      for (const auto& t : it->second) out.push_back(&t);
    } else if (table_->tables.count(key) || table_->values.count(key)) {
      fail(key, "must be written as repeated [[" + join_path(path_, key) + "]] sections");
    }
    return out;
  }

  const kv::Table* child(const std::string& key) {
    if (table_ == nullptr) return nullptr;
    seen_.insert(key);
    auto it = table_->tables.find(key);
    return it == table_->tables.end() ? nullptr : &it->second;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(join_path(path_, key) + " " + what);
  }

  /// Positive-number check with the key path in the message.
  void require_positive(const std::string& key, double value) const {
    if (!(value > 0.0)) fail(key, "must be positive (got " + kv::format_number(value) + ")");
  }

  void reject_unknown() const {
    if (table_ == nullptr) return;
    auto check = [&](const std::string& key) {
      if (!seen_.count(key)) throw ConfigError("unknown key " + join_path(path_, key));
    };
    for (const auto& [k, v] : table_->values) check(k);
    for (const auto& [k, v] : table_->tables) check(k);
    for (const auto& [k, v] : table_->arrays) check(k);
  }

 private:
  const kv::Table* table_;
  std::string path_;
  std::vector<std::string>& missing_;
  std::set<std::string> seen_;
};

std::size_t count_value(Section& s, const std::string& key, std::optional<double> v) {
  if (!v) return 0;
  if (*v < 0.0 || *v != std::floor(*v)) s.fail(key, "must be a non-negative integer");
  return static_cast<std::size_t>(*v);
}

std::vector<WalkerShell> read_walker_shells(Section& parent, const std::string& key,
                                            std::vector<std::string>& missing) {
  std::vector<WalkerShell> shells;
  const auto tables = parent.repeated(key);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    Section s(tables[i], join_path(parent.path(), key) + "[" + std::to_string(i) + "]", missing);
    WalkerShell shell;
    shell.spec.total_satellites = count_value(s, "total", s.required_number("total"));
    shell.spec.planes = count_value(s, "planes", s.required_number("planes"));
    shell.spec.phasing_factor = count_value(s, "phasing", s.number("phasing").value_or(0.0));
    shell.spec.inclination_deg = s.required_number("inclination_deg").value_or(0.0);
    shell.spec.altitude_km = s.required_number("altitude_km").value_or(0.0);
    shell.keep = count_value(s, "keep", s.number("keep"));
    s.reject_unknown();
    if (missing.empty()) {
      try {
        shell.spec.validate();
      } catch (const ConfigError& e) {
        throw ConfigError(s.path() + ": " + e.what());
      }
    }
    shells.push_back(shell);
  }
  return shells;
}

void read_link_overrides(Section& s, LinkParams& link) {
  if (auto v = s.number("eirp_dbw")) link.eirp_dbw = *v;
  if (auto v = s.number("frequency_hz")) {
    s.require_positive("frequency_hz", *v);
    link.frequency_hz = *v;
  }
  if (auto v = s.number("bandwidth_hz")) {
    s.require_positive("bandwidth_hz", *v);
    link.bandwidth_hz = *v;
  }
  if (auto v = s.number("atmos_atten_db")) {
    if (*v < 0.0) s.fail("atmos_atten_db", "must be >= 0");
    link.atmos_atten_db = *v;
  }
}

std::optional<Constellation> read_constellation(const kv::Table* table, const std::string& path,
                                                UtcInstant epoch,
                                                const std::filesystem::path& base_dir,
                                                std::vector<std::string>& missing) {
  if (table == nullptr) {
    missing.push_back(path);
    return std::nullopt;
  }
  Section s(table, path, missing);
  std::string name = path;
  LinkParams link;
  std::optional<ConstellationSource> source;

  if (auto preset_name = s.string("preset")) {
    const ConstellationPreset& preset = find_preset(*preset_name);
    name = preset.name;
    link = preset.link;
    source = preset.source;
    if (s.boolean("use_alternate_eirp").value_or(false) && preset.alternate_eirp_dbw) {
      link.eirp_dbw = *preset.alternate_eirp_dbw;
    }
  } else if (!s.has("eirp_dbw")) {
    missing.push_back(join_path(path, "eirp_dbw"));
  }
  if (auto n = s.string("name")) name = *n;
  read_link_overrides(s, link);

  int kinds = 0;
  std::optional<ConstellationSource> explicit_source;
  if (auto shells = read_walker_shells(s, "walker", missing); !shells.empty()) {
    explicit_source = shells;
    ++kinds;
  }
  if (auto tle = s.string("tle_file")) {
    std::filesystem::path p(*tle);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    explicit_source = TleSource{p.string()};
    ++kinds;
  }
  if (auto lons = s.numbers("geo_longitudes_deg")) {
    for (double lon : *lons) {
      if (!(lon >= -180.0 && lon <= 180.0)) s.fail("geo_longitudes_deg", "entries must lie in [-180, 180]");
    }
    explicit_source = GeoSource{*lons};
    ++kinds;
  }
  if (kinds > 1) {
    throw ConfigError(path + " must use exactly one of walker, tle_file, geo_longitudes_deg");
  }
  if (explicit_source) source = std::move(explicit_source);
  if (!source) {
    missing.push_back(path + ".preset (or walker / tle_file / geo_longitudes_deg)");
  }
  s.reject_unknown();
  if (!source || !missing.empty()) return std::nullopt;
  if (!std::isfinite(link.eirp_dbw)) s.fail("eirp_dbw", "must be finite");
  try {
    return Constellation::from_source(name, *source, link, epoch);
  } catch (const ParseError&) {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<GroundStation> read_stations(const kv::Table* table, std::vector<std::string>& missing) {
  std::vector<GroundStation> stations;
  if (table == nullptr) {
    missing.push_back("stations");
    return stations;
  }
  Section s(table, "stations", missing);
  if (auto preset = s.string("preset")) stations = find_station_preset(*preset).stations;
  const auto sites = s.repeated("site");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    Section site(sites[i], "stations.site[" + std::to_string(i) + "]", missing);
    GroundStation g;
    g.name = site.string("name").value_or("");
    if (g.name.empty()) missing.push_back(site.path() + ".name");
    g.latitude_deg = site.required_number("latitude_deg").value_or(0.0);
    g.longitude_deg = site.required_number("longitude_deg").value_or(0.0);
    g.altitude_m = site.number_or("altitude_m", 0.0);
    site.reject_unknown();
    try {
      g.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(site.path() + ": " + e.what());
    }
    stations.push_back(g);
  }
  s.reject_unknown();
  if (stations.empty() && missing.empty()) {
    missing.push_back("stations.preset (or [[stations.site]])");
  }
  return stations;
}

}  // namespace

ScenarioDocument parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  const kv::Table root = kv::parse(text);
  std::vector<std::string> missing;
  Section top(&root, "", missing);
  ScenarioDocument doc;
  Scenario& sc = doc.scenario;

  Section sim(top.child("simulation"), "simulation", missing);
  if (auto start = sim.string("start")) {
    sc.start = UtcInstant::parse_iso8601(*start);
  } else {
    missing.push_back("simulation.start");
  }
  if (auto v = sim.number("duration_s")) {
    sim.require_positive("duration_s", *v);
    sc.duration_s = *v;
  }
  if (auto v = sim.number("step_s")) {
    sim.require_positive("step_s", *v);
    sc.step_s = *v;
  }
  if (sc.duration_s < sc.step_s) sim.fail("duration_s", "must be at least step_s");
  if (auto v = sim.number("elevation_mask_deg")) {
    if (!(std::abs(*v) < 90.0)) sim.fail("elevation_mask_deg", "must lie in (-90, 90)");
    sc.elevation_mask_deg = *v;
  }
  if (auto v = sim.number("jam_threshold_db")) sc.jam_threshold_db = *v;
  if (auto v = sim.string("combiner")) {
    try {
      sc.combiner = combiner_from_string(*v);
    } catch (const ConfigError& e) {
      sim.fail("combiner", e.what());
    }
  }
  if (auto v = sim.string("jamming_average")) {
    if (*v == "pooled") {
      doc.averaging = JammingAveraging::kPooled;
    } else if (*v == "per_station") {
      doc.averaging = JammingAveraging::kPerStation;
    } else {
      sim.fail("jamming_average", "must be \"pooled\" or \"per_station\"");
    }
  }
  sim.reject_unknown();

  Section rx(top.child("receiver"), "receiver", missing);
  const double g_max = rx.number_or("g_max_dbi", 44.0);
  PatternKind kind = PatternKind::kErc;
  if (auto v = rx.string("pattern")) {
    try {
      kind = pattern_kind_from_string(*v);
    } catch (const ConfigError& e) {
      rx.fail("pattern", e.what());
    }
  }
  sc.pattern = GainPattern::of_kind(kind, g_max);
  if (kind == PatternKind::kErc && !(g_max > 7.7)) rx.fail("g_max_dbi", "is too small for a dish pattern");
  if (auto v = rx.number("system_temp_k")) {
    rx.require_positive("system_temp_k", *v);
    sc.noise.system_temp_k = *v;
  }
  std::optional<double> noise_bw = rx.number("noise_bandwidth_hz");
  if (noise_bw) rx.require_positive("noise_bandwidth_hz", *noise_bw);
  rx.reject_unknown();

  auto victim = read_constellation(top.child("victim"), "victim", sc.start, base_dir, missing);
  auto attacker = read_constellation(top.child("attacker"), "attacker", sc.start, base_dir, missing);
  sc.stations = read_stations(top.child("stations"), missing);

  if (const kv::Table* g = top.child("gnss")) {
    Section gs(g, "gnss", missing);
    if (auto n = gs.string("name")) doc.gnss.name = *n;
    read_link_overrides(gs, doc.gnss.link);
    if (auto shells = read_walker_shells(gs, "walker", missing); !shells.empty()) {
      doc.gnss.shells = shells;
    }
    gs.reject_unknown();
  }
  top.reject_unknown();

  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ConfigError("missing required keys: " + list);
  }
  sc.victim = std::move(*victim);
  sc.attacker = std::move(*attacker);
  sc.noise.bandwidth_hz = noise_bw.value_or(sc.victim.link.bandwidth_hz);
  sc.validate();
  return doc;
}

ScenarioDocument load_scenario_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), std::filesystem::absolute(path).parent_path());
}

Scenario load_scenario(const std::filesystem::path& path) {
  return load_scenario_document(path).scenario;
}

namespace {

void write_shells(std::ostream& out, const std::string& path, const std::vector<WalkerShell>& shells) {
  for (const WalkerShell& sh : shells) {
    out << "\n[[" << path << ".walker]]\n";
    out << "total = " << sh.spec.total_satellites << "\n";
    out << "planes = " << sh.spec.planes << "\n";
    out << "phasing = " << sh.spec.phasing_factor << "\n";
    out << "inclination_deg = " << kv::format_number(sh.spec.inclination_deg) << "\n";
    out << "altitude_km = " << kv::format_number(sh.spec.altitude_km) << "\n";
    if (sh.keep != 0) out << "keep = " << sh.keep << "\n";
  }
}

void write_link(std::ostream& out, const LinkParams& link) {
  out << "eirp_dbw = " << kv::format_number(link.eirp_dbw) << "\n";
  out << "frequency_hz = " << kv::format_number(link.frequency_hz) << "\n";
  out << "bandwidth_hz = " << kv::format_number(link.bandwidth_hz) << "\n";
  out << "atmos_atten_db = " << kv::format_number(link.atmos_atten_db) << "\n";
}

void write_constellation(std::ostream& out, const std::string& path, const Constellation& c) {
  out << "\n[" << path << "]\n";
  out << "name = " << kv::quote(c.name) << "\n";
  write_link(out, c.link);
  if (const auto* tle = std::get_if<TleSource>(&c.source)) {
    out << "tle_file = " << kv::quote(tle->path) << "\n";
  } else if (const auto* geo = std::get_if<GeoSource>(&c.source)) {
    out << "geo_longitudes_deg = [";
    for (std::size_t i = 0; i < geo->longitudes_deg.size(); ++i) {
      out << (i ? ", " : "") << kv::format_number(geo->longitudes_deg[i]);
    }
    out << "]\n";
  } else {
    write_shells(out, path, std::get<std::vector<WalkerShell>>(c.source));
  }
}

}  // namespace

std::string serialize_scenario(const ScenarioDocument& doc) {
  const Scenario& sc = doc.scenario;
  std::ostringstream out;
  out << "[simulation]\n";
  out << "start = " << kv::quote(sc.start.iso8601()) << "\n";
  out << "duration_s = " << kv::format_number(sc.duration_s) << "\n";
  out << "step_s = " << kv::format_number(sc.step_s) << "\n";
  out << "elevation_mask_deg = " << kv::format_number(sc.elevation_mask_deg) << "\n";
  out << "jam_threshold_db = " << kv::format_number(sc.jam_threshold_db) << "\n";
  out << "combiner = " << kv::quote(to_string(sc.combiner)) << "\n";
  out << "jamming_average = "
      << kv::quote(doc.averaging == JammingAveraging::kPooled ? "pooled" : "per_station") << "\n";

  out << "\n[receiver]\n";
  out << "pattern = " << kv::quote(to_string(sc.pattern.kind)) << "\n";
  out << "g_max_dbi = " << kv::format_number(sc.pattern.g_max_dbi) << "\n";
  out << "system_temp_k = " << kv::format_number(sc.noise.system_temp_k) << "\n";
  out << "noise_bandwidth_hz = " << kv::format_number(sc.noise.bandwidth_hz) << "\n";

  write_constellation(out, "victim", sc.victim);
  write_constellation(out, "attacker", sc.attacker);

  out << "\n[stations]\n";
  for (const GroundStation& g : sc.stations) {
    out << "\n[[stations.site]]\n";
    out << "name = " << kv::quote(g.name) << "\n";
    out << "latitude_deg = " << kv::format_number(g.latitude_deg) << "\n";
    out << "longitude_deg = " << kv::format_number(g.longitude_deg) << "\n";
    out << "altitude_m = " << kv::format_number(g.altitude_m) << "\n";
  }

  out << "\n[gnss]\n";
  out << "name = " << kv::quote(doc.gnss.name) << "\n";
  write_link(out, doc.gnss.link);
  write_shells(out, "gnss", doc.gnss.shells);
  return out.str();
}

std::string serialize_scenario(const Scenario& scenario) {
  ScenarioDocument doc;
  doc.scenario = scenario;
  return serialize_scenario(doc);
}

}  // namespace leojam
