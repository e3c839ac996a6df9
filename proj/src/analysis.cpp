#include "leojam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "leojam/errors.hpp"

namespace leojam {

std::size_t JammingMask::no_service_steps() const {
  return static_cast<std::size_t>(std::count(in_service.begin(), in_service.end(), false));
}

JammingMask jamming_mask(const SinrSeries& series, double threshold_db) {
  JammingMask mask;
  mask.station = series.station.name;
  mask.start = series.start;
  mask.step_s = series.step_s;
  mask.jammed.reserve(series.records.size());
  mask.in_service.reserve(series.records.size());
  for (const StepRecord& r : series.records) {
    mask.in_service.push_back(r.service);
    mask.jammed.push_back(r.service && r.sinr_db < threshold_db);
  }
  return mask;
}

double jamming_fraction(const std::vector<bool>& mask) {
  if (mask.empty()) throw DomainError("jamming fraction of an empty mask");
  const auto hits = std::count(mask.begin(), mask.end(), true);
  return 100.0 * static_cast<double>(hits) / static_cast<double>(mask.size());
}

double jamming_fraction(const JammingMask& mask) {
  const std::size_t service = mask.in_service.size() - mask.no_service_steps();
  if (service == 0) throw DomainError("jamming fraction with no in-service steps");
  const auto hits = std::count(mask.jammed.begin(), mask.jammed.end(), true);
  return 100.0 * static_cast<double>(hits) / static_cast<double>(service);
}

std::vector<JammingRun> extract_runs(const std::vector<bool>& mask, double step_s, UtcInstant start,
                                     const std::string& station) {
  std::vector<JammingRun> runs;
  std::size_t i = 0;
  while (i < mask.size()) {
    if (!mask[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < mask.size() && mask[j]) ++j;
    runs.push_back({start + static_cast<double>(i) * step_s, static_cast<double>(j - i) * step_s,
                    station});
    i = j;
  }
  return runs;
}

std::vector<JammingRun> extract_runs(const JammingMask& mask) {
  return extract_runs(mask.jammed, mask.step_s, mask.start, mask.station);
}

std::size_t RunHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

RunHistogram run_histogram(const std::vector<JammingRun>& runs, double bin_s, double step_s) {
  if (!(bin_s > 0.0)) throw DomainError("histogram bin width must be positive");
  if (step_s > 0.0) {
    const double ratio = bin_s / step_s;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1.0) {
      throw DomainError("histogram bin width must be a whole multiple of the step");
    }
  }
  RunHistogram hist;
  hist.bin_s = bin_s;
  for (const JammingRun& run : runs) {
    const auto bin = static_cast<std::size_t>(std::floor(run.length_s / bin_s + 1e-9));
    if (bin >= hist.counts.size()) hist.counts.resize(bin + 1, 0);
    ++hist.counts[bin];
  }
  return hist;
}

namespace {

void check_shapes(const std::vector<SinrSeries>& series, double step_s, std::size_t length) {
  for (const SinrSeries& s : series) {
    if (s.step_s != step_s || s.records.size() != length) {
      throw ConsistencyError("series for '" + s.station.name +
                             "' does not share the step and length of the others");
    }
  }
}

// Sorting the per-station partial sums makes the total independent of station order.
double order_free_sum(std::vector<double> parts) {
  std::sort(parts.begin(), parts.end());
  return std::accumulate(parts.begin(), parts.end(), 0.0);
}

}  // namespace

SummaryRow summarize(const ConstellationSeries& set, double threshold_db, JammingAveraging averaging) {
  SummaryRow row;
  row.constellation = set.name;
  if (set.series.empty()) throw ConsistencyError("constellation '" + set.name + "' has no series");
  check_shapes(set.series, set.series.front().step_s, set.series.front().records.size());

  std::vector<double> sinr_sums;
  std::vector<double> station_pcts;
  std::vector<double> run_lengths;
  std::size_t service = 0;
  std::size_t jammed = 0;
  for (const SinrSeries& s : set.series) {
    double sum = 0.0;
    for (const StepRecord& r : s.records) {
      if (r.service) sum += r.sinr_db;
    }
    sinr_sums.push_back(sum);
    const JammingMask mask = jamming_mask(s, threshold_db);
    const std::size_t station_service = s.records.size() - mask.no_service_steps();
    const auto station_jammed =
        static_cast<std::size_t>(std::count(mask.jammed.begin(), mask.jammed.end(), true));
    service += station_service;
    jammed += station_jammed;
    row.no_service_steps += mask.no_service_steps();
    if (station_service > 0) station_pcts.push_back(jamming_fraction(mask));
    for (const JammingRun& run : extract_runs(mask)) run_lengths.push_back(run.length_s);
  }

  if (service == 0) throw DomainError("constellation '" + set.name + "' never has service");
  row.mean_sinr_db = order_free_sum(sinr_sums) / static_cast<double>(service);
  row.mean_jamming_pct =
      averaging == JammingAveraging::kPooled
          ? 100.0 * static_cast<double>(jammed) / static_cast<double>(service)
          : order_free_sum(station_pcts) / static_cast<double>(station_pcts.size());
  row.mean_jam_period_s =
      run_lengths.empty() ? 0.0
                          : order_free_sum(run_lengths) / static_cast<double>(run_lengths.size());
  return row;
}

std::vector<SummaryRow> summarize(const std::vector<ConstellationSeries>& sets, double threshold_db,
                                  JammingAveraging averaging) {
  std::vector<SummaryRow> rows;
  if (sets.empty()) return rows;
  const auto& ref = sets.front().series;
  if (ref.empty()) throw ConsistencyError("constellation '" + sets.front().name + "' has no series");
  for (const auto& set : sets) check_shapes(set.series, ref.front().step_s, ref.front().records.size());
  for (const auto& set : sets) rows.push_back(summarize(set, threshold_db, averaging));
  return rows;
}

std::vector<double> strongest_only_gap_db(const SinrSeries& series) {
  std::vector<double> gap;
  gap.reserve(series.records.size());
  for (const StepRecord& r : series.records) {
    if (!r.service || r.n_visible_interferers == 0) {
      gap.push_back(0.0);
      continue;
    }
    const double noise_w = db_to_watts(r.noise_dbw);
    const double strongest_only = r.signal_dbw - watts_to_db(noise_w + db_to_watts(r.strongest_interferer_dbw));
    gap.push_back(strongest_only - r.sinr_db);
  }
  return gap;
}

double mean_interference_dbw(const std::vector<SinrSeries>& series) {
  std::vector<double> sums;
  std::size_t n = 0;
  for (const SinrSeries& s : series) {
    double sum = 0.0;
    for (const StepRecord& r : s.records) {
      if (!r.service) continue;
      ++n;
      if (r.n_visible_interferers > 0) sum += db_to_watts(r.interference_dbw);
    }
    sums.push_back(sum);
  }
  const double total = order_free_sum(sums);
  return n == 0 || total <= 0.0 ? kNoPower : watts_to_db(total / static_cast<double>(n));
}

GainCurve sample_gain_curves(const std::vector<GainPattern>& patterns, double phi_max_deg,
                             double phi_step_deg) {
  if (!(phi_step_deg > 0.0) || !(phi_max_deg >= 0.0) || phi_max_deg > 180.0) {
    throw DomainError("gain curve sampling needs 0 <= phi_max <= 180 and a positive step");
  }
  GainCurve curve;
  const auto n = static_cast<std::size_t>(std::floor(phi_max_deg / phi_step_deg + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) curve.phi_deg.push_back(static_cast<double>(i) * phi_step_deg);
  for (const GainPattern& p : patterns) {
    std::vector<double> row;
    row.reserve(n);
    for (double phi : curve.phi_deg) row.push_back(gain_db(p, phi));
    curve.gain_dbi.push_back(std::move(row));
  }
  return curve;
}

PatternComparison compare_patterns(const Scenario& scenario, const std::vector<GainPattern>& patterns,
                                   const ExecutionOptions& options) {
  if (patterns.size() < 2) throw DomainError("pattern comparison needs at least two patterns");
  PatternComparison out;
  out.patterns = patterns;
  out.curves = sample_gain_curves(patterns);
  for (const GainPattern& p : patterns) {
    Scenario variant = scenario;
    variant.pattern = p;
    const auto series = run_scenario(variant, options);
    ConstellationSeries set{scenario.attacker.name + "/" + std::string(to_string(p.kind)), series};
    out.rows.push_back(summarize(set, scenario.jam_threshold_db));
    std::vector<double> per_station;
    for (const SinrSeries& s : series) {
      per_station.push_back(jamming_fraction(jamming_mask(s, scenario.jam_threshold_db)));
    }
    out.station_jamming_pct.push_back(std::move(per_station));
    out.mean_interference_dbw.push_back(mean_interference_dbw(series));
  }
  return out;
}

GnssComparison gnss_compare(const Scenario& scenario, const GnssConfig& gnss) {
  scenario.validate();
  gnss.link.validate();
  const auto nav = expand_source(gnss.shells, scenario.start);

  // The attacker keeps its own EIRP and losses but transmits on the navigation carrier.
  LinkParams retuned = scenario.attacker.link;
  retuned.frequency_hz = gnss.link.frequency_hz;

  std::vector<OrbitPropagator> nav_props(nav.begin(), nav.end());
  std::vector<OrbitPropagator> cube_props(scenario.attacker.satellites.begin(),
                                          scenario.attacker.satellites.end());
  const std::size_t steps = scenario.step_count();
  constexpr double kIsotropicDbi = 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  GnssComparison out;
  out.start = scenario.start;
  out.step_s = scenario.step_s;
  out.stations.resize(scenario.stations.size());
  std::vector<Vector3<double>> station_ecef;
  std::vector<Eigen::Matrix3d> station_enu;
  for (std::size_t s = 0; s < scenario.stations.size(); ++s) {
    out.stations[s].station = scenario.stations[s].name;
    out.stations[s].gnss_mean_dbw.assign(steps, nan);
    out.stations[s].cubesat_mean_dbw.assign(steps, nan);
    station_ecef.push_back(geodetic_to_ecef(scenario.stations[s]));
    station_enu.push_back(enu_basis(scenario.stations[s]));
  }

  auto mean_visible = [&](const std::vector<Vector3<double>>& ecef, std::size_t s,
                          const LinkParams& link) {
    double sum_w = 0.0;
    std::size_t n = 0;
    for (const auto& p : ecef) {
      const Topocentric topo = topocentric_from(station_ecef[s], station_enu[s], p);
      if (!visible(topo, scenario.elevation_mask_deg)) continue;
      sum_w += db_to_watts(
          received_power_dbw(link, kIsotropicDbi, fspl_db(topo.range_km, link.frequency_hz)));
      ++n;
    }
    return n == 0 ? nan : watts_to_db(sum_w / static_cast<double>(n));
  };

  std::vector<Vector3<double>> nav_ecef(nav_props.size());
  std::vector<Vector3<double>> cube_ecef(cube_props.size());
  for (std::size_t k = 0; k < steps; ++k) {
    const UtcInstant t = scenario.time_at(k);
    const Eigen::Matrix3d rot = eci_to_ecef_rotation(t);
    for (std::size_t i = 0; i < nav_props.size(); ++i) nav_ecef[i] = rot * nav_props[i].position_at(t);
    for (std::size_t i = 0; i < cube_props.size(); ++i) cube_ecef[i] = rot * cube_props[i].position_at(t);
    for (std::size_t s = 0; s < scenario.stations.size(); ++s) {
      out.stations[s].gnss_mean_dbw[k] = mean_visible(nav_ecef, s, gnss.link);
      out.stations[s].cubesat_mean_dbw[k] = mean_visible(cube_ecef, s, retuned);
    }
  }

  auto daily_mean = [&](const std::vector<double>& v) {
    double sum_w = 0.0;
    std::size_t n = 0;
    for (double x : v) {
      if (std::isnan(x)) continue;
      sum_w += db_to_watts(x);
      ++n;
    }
    return n == 0 ? nan : watts_to_db(sum_w / static_cast<double>(n));
  };
  for (auto& st : out.stations) {
    st.gnss_daily_mean_dbw = daily_mean(st.gnss_mean_dbw);
    st.cubesat_daily_mean_dbw = daily_mean(st.cubesat_mean_dbw);
  }
  return out;
}

}  // namespace leojam
