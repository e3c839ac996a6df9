#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "leojam/errors.hpp"
#include "leojam/presets.hpp"
#include "leojam/results.hpp"
#include "leojam/scenario_io.hpp"

using namespace leojam;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Options {
  unsigned threads = 0;
  std::string scenario;
  std::string out_dir;
  double eirp_from = 0.0;
  double eirp_to = 0.0;
  double eirp_step = 0.0;
  double bin_s = 0.0;
  std::string patterns = "erc,itu";
};

void print_summary(const std::vector<SummaryRow>& rows) {
  std::cout << summary_csv(rows);
}

GainCurve curve_for(const std::vector<GainPattern>& patterns) {
  return sample_gain_curves(patterns);
}

int cmd_presets() {
  std::cout << "constellations:\n";
  for (const auto& p : builtin_presets()) {
    std::cout << "  " << p.name << "  sats=" << p.satellite_count()
              << "  eirp_dbw=" << format_value(p.link.eirp_dbw);
    if (p.alternate_eirp_dbw) std::cout << " (alt " << format_value(*p.alternate_eirp_dbw) << ")";
    std::cout << "\n    " << p.description << "\n    provenance: " << p.provenance << "\n";
  }
  std::cout << "groundstations:\n";
  for (const auto& s : builtin_station_presets()) {
    std::cout << "  " << s.name << "  stations=" << s.stations.size() << "\n    provenance: "
              << s.provenance << "\n";
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  const ScenarioDocument doc = load_scenario_document(o.scenario);
  const Scenario& sc = doc.scenario;
  ExecutionOptions exec{o.threads};

  ResultBundle bundle;
  bundle.fingerprint = scenario_fingerprint(sc);
  bundle.series = run_scenario(sc, exec);
  bundle.summary = {summarize(ConstellationSeries{sc.attacker.name, bundle.series},
                              sc.jam_threshold_db, doc.averaging)};
  std::vector<JammingRun> runs;
  for (const SinrSeries& s : bundle.series) {
    auto r = extract_runs(jamming_mask(s, sc.jam_threshold_db));
    runs.insert(runs.end(), r.begin(), r.end());
  }
  bundle.histogram = run_histogram(runs, o.bin_s > 0 ? o.bin_s : sc.step_s, sc.step_s);
  bundle.patterns = {sc.pattern};
  bundle.gain_curve = curve_for(bundle.patterns);
  const Manifest m = emit_results(bundle, o.out_dir);
  print_summary(bundle.summary);
  std::cerr << "wrote " << m.files.size() + 1 << " files to " << o.out_dir << "\n";
  return 0;
}

int cmd_sweep(const Options& o) {
  if (!(o.eirp_step > 0.0)) throw ConfigError("--eirp-step must be positive");
  if (!(o.eirp_to >= o.eirp_from)) throw ConfigError("--eirp-to must not be below --eirp-from");
  const double span = (o.eirp_to - o.eirp_from) / o.eirp_step;
  if (span > 1e6) throw ConfigError("EIRP grid has more than a million points");

  const ScenarioDocument doc = load_scenario_document(o.scenario);
  const Scenario& sc = doc.scenario;
  ExecutionOptions exec{o.threads};

  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) grid.push_back(o.eirp_from + static_cast<double>(i) * o.eirp_step);

  const GeometryCache cache = build_geometry_cache(sc, exec);
  ResultBundle bundle;
  bundle.fingerprint = scenario_fingerprint(sc);
  bundle.sweep = sweep_power(cache, grid, sc, exec);

  std::cout << "eirp_dbw";
  for (const auto& st : bundle.sweep->stations) std::cout << ',' << st.station;
  std::cout << ",pooled\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::cout << format_value(grid[i]);
    for (const auto& st : bundle.sweep->stations) std::cout << ',' << format_value(st.jamming_pct[i]);
    std::cout << ',' << format_value(bundle.sweep->pooled_pct[i]) << '\n';
  }
  if (!o.out_dir.empty()) emit_results(bundle, o.out_dir);
  return 0;
}

int cmd_runs(const Options& o) {
  const ScenarioDocument doc = load_scenario_document(o.scenario);
  const Scenario& sc = doc.scenario;
  const double bin = o.bin_s > 0 ? o.bin_s : sc.step_s;
  const auto series = run_scenario(sc, ExecutionOptions{o.threads});

  std::vector<JammingRun> runs;
  double longest = 0.0;
  for (const SinrSeries& s : series) {
    auto r = extract_runs(jamming_mask(s, sc.jam_threshold_db));
    for (const auto& run : r) longest = std::max(longest, run.length_s);
    std::cerr << s.station.name << ": " << r.size() << " runs\n";
    runs.insert(runs.end(), r.begin(), r.end());
  }
  ResultBundle bundle;
  bundle.fingerprint = scenario_fingerprint(sc);
  bundle.histogram = run_histogram(runs, bin, sc.step_s);
  std::cout << histogram_csv(*bundle.histogram);
  std::cerr << "runs=" << runs.size() << " longest_s=" << format_value(longest) << "\n";
  if (!o.out_dir.empty()) emit_results(bundle, o.out_dir);
  return 0;
}

std::vector<GainPattern> parse_patterns(const std::string& list, double g_max) {
  std::vector<GainPattern> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(GainPattern::of_kind(pattern_kind_from_string(item), g_max));
  }
  if (out.size() < 2) throw ConfigError("--patterns needs at least two entries");
  return out;
}

int cmd_compare(const Options& o) {
  const ScenarioDocument doc = load_scenario_document(o.scenario);
  const Scenario& sc = doc.scenario;
  const auto patterns = parse_patterns(o.patterns, sc.pattern.g_max_dbi);
  const PatternComparison cmp = compare_patterns(sc, patterns, ExecutionOptions{o.threads});

  std::cout << "station";
  for (const auto& p : patterns) std::cout << ",jamming_pct_" << to_string(p.kind);
  std::cout << '\n';
  for (std::size_t s = 0; s < sc.stations.size(); ++s) {
    std::cout << sc.stations[s].name;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      std::cout << ',' << format_value(cmp.station_jamming_pct[p][s]);
    }
    std::cout << '\n';
  }
  std::cout << "mean_interference_dbw";
  for (double v : cmp.mean_interference_dbw) std::cout << ',' << format_value(v);
  std::cout << '\n';

  if (!o.out_dir.empty()) {
    ResultBundle bundle;
    bundle.fingerprint = scenario_fingerprint(sc);
    bundle.summary = cmp.rows;
    bundle.patterns = patterns;
    bundle.gain_curve = cmp.curves;
    emit_results(bundle, o.out_dir);
  }
  return 0;
}

int cmd_gnss(const Options& o) {
  const ScenarioDocument doc = load_scenario_document(o.scenario);
  const GnssComparison cmp = gnss_compare(doc.scenario, doc.gnss);
  std::cout << "station,gnss_mean_dbw,cubesat_mean_dbw,difference_db\n";
  for (const auto& s : cmp.stations) {
    std::cout << s.station << ',' << format_value(s.gnss_daily_mean_dbw) << ','
              << format_value(s.cubesat_daily_mean_dbw) << ','
              << format_value(s.cubesat_daily_mean_dbw - s.gnss_daily_mean_dbw) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate LEO constellation interference on GEO downlinks"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  auto* presets = app.add_subcommand("presets", "List built-in constellation and groundstation presets");

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write all result files");
  simulate->add_option("scenario", o.scenario, "Scenario file")->required();
  simulate->add_option("-o,--output", o.out_dir, "Output directory")->required();
  simulate->add_option("--bin", o.bin_s, "Run histogram bin width in seconds (default: step)");

  auto* sweep = app.add_subcommand("sweep", "Jamming percentage versus attacker EIRP");
  sweep->add_option("scenario", o.scenario, "Scenario file")->required();
  sweep->add_option("--eirp-from", o.eirp_from, "First EIRP in dBW")->required();
  sweep->add_option("--eirp-to", o.eirp_to, "Last EIRP in dBW")->required();
  sweep->add_option("--eirp-step", o.eirp_step, "EIRP increment in dB")->required();
  sweep->add_option("-o,--output", o.out_dir, "Also write sweep_<station>.csv files here");

  auto* runs = app.add_subcommand("runs", "Histogram of jamming run lengths");
  runs->add_option("scenario", o.scenario, "Scenario file")->required();
  runs->add_option("--bin", o.bin_s, "Bin width in seconds (default: step)");
  runs->add_option("-o,--output", o.out_dir, "Also write runs_histogram.csv here");

  auto* compare = app.add_subcommand("compare-antenna", "Compare receive antenna patterns");
  compare->add_option("scenario", o.scenario, "Scenario file")->required();
  compare->add_option("--patterns", o.patterns, "Comma-separated patterns: erc, itu, constant");
  compare->add_option("-o,--output", o.out_dir, "Also write summary.csv and gain_pattern.csv here");

  auto* gnss = app.add_subcommand("gnss-compare", "Compare attacker and GNSS received power");
  gnss->add_option("scenario", o.scenario, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*presets) return cmd_presets();
    if (*simulate) return cmd_simulate(o);
    if (*sweep) return cmd_sweep(o);
    if (*runs) return cmd_runs(o);
    if (*compare) return cmd_compare(o);
    if (*gnss) return cmd_gnss(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
