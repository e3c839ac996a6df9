#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "leojam/sinr_engine.hpp"

namespace leojam {

struct JammingRun {
  UtcInstant start;
  double length_s = 0.0;
  std::string station;
};

/// Per-step jamming flags for one station. No-service steps are never jammed
/// and are tracked separately so they drop out of every fraction.
struct JammingMask {
  std::string station;
  UtcInstant start;
  double step_s = 0.0;
  std::vector<bool> jammed;
  std::vector<bool> in_service;

  std::size_t no_service_steps() const;
};

/// jammed[i] is true iff the step is in service and sinr_db < threshold_db.
JammingMask jamming_mask(const SinrSeries& series, double threshold_db);

/// 100 * count(true) / size. Throws DomainError on an empty mask.
double jamming_fraction(const std::vector<bool>& mask);
/// Percentage over in-service steps only.
double jamming_fraction(const JammingMask& mask);

/// Maximal runs of consecutive true flags; the series ends close any open run.
std::vector<JammingRun> extract_runs(const std::vector<bool>& mask, double step_s,
                                     UtcInstant start = {}, const std::string& station = {});
std::vector<JammingRun> extract_runs(const JammingMask& mask);

struct RunHistogram {
  double bin_s = 0.0;
  std::vector<std::size_t> counts;  // counts[k] covers [k * bin_s, (k + 1) * bin_s)

  std::size_t total() const;
};

/// Pools runs from any number of stations. When `step_s` is positive the bin
/// width must be a whole multiple of it.
RunHistogram run_histogram(const std::vector<JammingRun>& runs, double bin_s, double step_s = 0.0);

struct SummaryRow {
  std::string constellation;
  double mean_sinr_db = 0.0;
  double mean_jamming_pct = 0.0;
  double mean_jam_period_s = 0.0;
  std::size_t no_service_steps = 0;
};

/// Pooled: jammed steps over all in-service steps of every station.
/// PerStation: arithmetic mean of each station's own percentage.
enum class JammingAveraging { kPooled, kPerStation };

struct ConstellationSeries {
  std::string name;
  std::vector<SinrSeries> series;
};

SummaryRow summarize(const ConstellationSeries& set, double threshold_db,
                     JammingAveraging averaging = JammingAveraging::kPooled);
std::vector<SummaryRow> summarize(const std::vector<ConstellationSeries>& sets, double threshold_db,
                                  JammingAveraging averaging = JammingAveraging::kPooled);

/// Per-step difference between the SINR against the single strongest
/// interferer and the SINR against the combined interference (>= 0).
std::vector<double> strongest_only_gap_db(const SinrSeries& series);

/// Watts-averaged interference over in-service steps, in dBW (-inf when none).
double mean_interference_dbw(const std::vector<SinrSeries>& series);

struct GainCurve {
  std::vector<double> phi_deg;
  std::vector<std::vector<double>> gain_dbi;  // one row per pattern
};

GainCurve sample_gain_curves(const std::vector<GainPattern>& patterns, double phi_max_deg = 90.0,
                             double phi_step_deg = 0.1);

struct PatternComparison {
  std::vector<GainPattern> patterns;
  GainCurve curves;
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> station_jamming_pct;  // [pattern][station]
  std::vector<double> mean_interference_dbw;             // per pattern
};

/// Runs the same scenario under each receive pattern. Needs at least two patterns.
PatternComparison compare_patterns(const Scenario& scenario, const std::vector<GainPattern>& patterns,
                                   const ExecutionOptions& options = {});

/// Reference navigation constellation for the received-power comparison.
struct GnssConfig {
  std::string name = "gps24";
  LinkParams link{27.0, 1575.42e6, 2.046e6, 0.0};
  std::vector<WalkerShell> shells{{WalkerSpec{24, 6, 1, 55.0, 20200.0}, 0}};

  bool operator==(const GnssConfig&) const = default;
};

struct GnssStationSeries {
  std::string station;
  std::vector<double> gnss_mean_dbw;     // NaN where nothing is visible
  std::vector<double> cubesat_mean_dbw;  // NaN where nothing is visible
  double gnss_daily_mean_dbw = 0.0;
  double cubesat_daily_mean_dbw = 0.0;
};

struct GnssComparison {
  UtcInstant start;
  double step_s = 0.0;
  std::vector<GnssStationSeries> stations;
};

/// Mean received power per step from visible navigation satellites and from
/// visible attacker satellites retuned to the navigation carrier, both into an
/// isotropic 0 dBi receiver. Means are taken in watts and reported in dBW.
GnssComparison gnss_compare(const Scenario& cubesat_scenario, const GnssConfig& gnss = {});

}  // namespace leojam
