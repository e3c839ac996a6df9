#include "leojam/sinr_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "leojam/digest.hpp"
#include "leojam/errors.hpp"

namespace leojam {

std::string_view to_string(InterferenceCombiner combiner) {
  return combiner == InterferenceCombiner::kPowerSum ? "sum" : "rss";
}

InterferenceCombiner combiner_from_string(std::string_view name) {
  if (name == "rss") return InterferenceCombiner::kRootSumSquare;
  if (name == "sum") return InterferenceCombiner::kPowerSum;
  throw ConfigError("unknown interference combiner '" + std::string(name) + "' (expected rss or sum)");
}

void Scenario::validate() const {
  victim.link.validate();
  attacker.link.validate();
  pattern.validate();
  noise.validate();
  if (victim.satellites.empty()) throw ConfigError("victim constellation has no satellites");
  if (stations.empty()) throw ConfigError("scenario has no ground stations");
  for (const auto& s : stations) s.validate();
  for (const auto* c : {&victim, &attacker}) {
    for (const auto& e : c->satellites) e.validate();
  }
  if (!(step_s > 0.0)) throw ConfigError("step_s must be positive");
  if (!(duration_s >= step_s)) throw ConfigError("duration_s must be at least one step");
  if (!std::isfinite(elevation_mask_deg) || std::abs(elevation_mask_deg) >= 90.0) {
    throw ConfigError("elevation mask must lie in (-90, 90) deg");
  }
  if (!std::isfinite(jam_threshold_db)) throw ConfigError("jam threshold must be finite");
}

std::size_t Scenario::step_count() const {
  return static_cast<std::size_t>(std::floor(duration_s / step_s + 1e-9));
}

namespace {

void append_hex(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a;", value);
  out += buf;
}

void append_elements(std::string& out, const Constellation& c, bool with_eirp) {
  out += c.name + ";";
  if (with_eirp) append_hex(out, c.link.eirp_dbw);
  for (double v : {c.link.frequency_hz, c.link.bandwidth_hz, c.link.atmos_atten_db}) {
    append_hex(out, v);
  }
  out += std::to_string(c.satellites.size()) + ";";
  for (const auto& e : c.satellites) {
    for (double v : {e.semi_major_axis_km, e.eccentricity, e.inclination_deg, e.raan_deg,
                     e.arg_latitude_deg, e.arg_perigee_deg, e.epoch.seconds_since_j2000}) {
      append_hex(out, v);
    }
  }
}

std::string fingerprint_of(const Scenario& s, bool with_attacker_eirp) {
  std::string canon = with_attacker_eirp ? "leojam-scenario-v1;" : "leojam-geometry-v1;";
  append_elements(canon, s.victim, true);
  append_elements(canon, s.attacker, with_attacker_eirp);
  for (const auto& st : s.stations) {
    canon += st.name + ";";
    for (double v : {st.latitude_deg, st.longitude_deg, st.altitude_m}) append_hex(canon, v);
  }
  canon += std::string(to_string(s.pattern.kind)) + ";";
  for (double v : {s.pattern.g_max_dbi, s.pattern.d_over_lambda, s.pattern.g1_dbi,
                   s.pattern.phi_m_deg, s.noise.system_temp_k, s.noise.bandwidth_hz,
                   s.start.seconds_since_j2000, s.duration_s, s.step_s, s.elevation_mask_deg,
                   s.jam_threshold_db}) {
    append_hex(canon, v);
  }
  canon += std::string(to_string(s.combiner));
  return sha256_hex(canon);
}

}  // namespace

std::string scenario_fingerprint(const Scenario& s) { return fingerprint_of(s, true); }

std::string geometry_fingerprint(const Scenario& s) { return fingerprint_of(s, false); }

std::size_t SinrSeries::service_steps() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const StepRecord& r) { return r.service; }));
}

std::size_t GeometryCache::entry_count() const {
  std::size_t n = 0;
  for (const auto& s : stations) n += s.contribution_db.size();
  return n;
}

double combine_interference_w(std::span<const double> interferer_dbw,
                              InterferenceCombiner combiner) {
  double acc = 0.0;
  if (combiner == InterferenceCombiner::kPowerSum) {
    for (double p : interferer_dbw) acc += db_to_watts(p);
    return acc;
  }
  for (double p : interferer_dbw) {
    const double w = db_to_watts(p);
    acc += w * w;
  }
  return std::sqrt(acc);
}

double combine_sinr(double carrier_dbw, std::span<const double> interferer_dbw, double noise_dbw,
                    InterferenceCombiner combiner) {
  const double interference_w = combine_interference_w(interferer_dbw, combiner);
  return 10.0 * std::log10(db_to_watts(carrier_dbw) / (db_to_watts(noise_dbw) + interference_w));
}

namespace {

struct InterfererView {
  std::uint32_t index;
  double distance_km;
  double phi_deg;
};

struct StationStepView {
  bool service = false;
  std::uint32_t geo_index = 0;
  double geo_distance_km = 0.0;
  std::span<const InterfererView> interferers;
};

struct StationFrame {
  Vector3<double> ecef;
  Eigen::Matrix3d enu;
  Vector3<double> up;
};

unsigned resolve_threads(const ExecutionOptions& options, std::size_t steps) {
  unsigned n = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, steps)));
}

/// Walks every (station, step), handing the visitor the victim choice and the
/// visible interferers in satellite-index order. Steps are split into
/// contiguous chunks, one per worker; `visit(chunk, station, step, view)` is
/// called concurrently for distinct steps only.
template <typename Visitor>
void geometry_pass(const Scenario& scenario, unsigned chunks, Visitor&& visit) {
  const std::size_t steps = scenario.step_count();
  std::vector<OrbitPropagator> victims;
  std::vector<OrbitPropagator> attackers;
  victims.reserve(scenario.victim.satellites.size());
  attackers.reserve(scenario.attacker.satellites.size());
  for (const auto& e : scenario.victim.satellites) victims.emplace_back(e);
  for (const auto& e : scenario.attacker.satellites) attackers.emplace_back(e);

  std::vector<StationFrame> frames;
  for (const auto& st : scenario.stations) {
    StationFrame f;
    f.ecef = geodetic_to_ecef(st);
    f.enu = enu_basis(st);
    f.up = f.enu.row(2).transpose();
    frames.push_back(f);
  }
  const double mask = scenario.elevation_mask_deg;

  auto work = [&](unsigned chunk, std::size_t first, std::size_t last) {
    std::vector<Vector3<double>> victim_ecef(victims.size());
    std::vector<Vector3<double>> attacker_ecef(attackers.size());
    std::vector<InterfererView> visible_now;
    visible_now.reserve(attackers.size());
    for (std::size_t step = first; step < last; ++step) {
      const UtcInstant t = scenario.time_at(step);
      const Eigen::Matrix3d to_ecef = eci_to_ecef_rotation(t);
      for (std::size_t i = 0; i < victims.size(); ++i) {
        victim_ecef[i] = to_ecef * victims[i].position_at(t);
      }
      for (std::size_t i = 0; i < attackers.size(); ++i) {
        attacker_ecef[i] = to_ecef * attackers[i].position_at(t);
      }
      for (std::size_t s = 0; s < frames.size(); ++s) {
        const StationFrame& f = frames[s];
        StationStepView view;
        // Every victim satellite shares one EIRP and the tracked boresight gain,
        // so the strongest carrier is the nearest one above the horizon.
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < victims.size(); ++i) {
          const Topocentric topo = topocentric_from(f.ecef, f.enu, victim_ecef[i]);
          if (topo.elevation_deg > 0.0 && topo.range_km < best) {
            best = topo.range_km;
            view.service = true;
            view.geo_index = static_cast<std::uint32_t>(i);
            view.geo_distance_km = topo.range_km;
          }
        }
        visible_now.clear();
        if (view.service) {
          const Vector3<double> boresight = victim_ecef[view.geo_index] - f.ecef;
          for (std::size_t i = 0; i < attackers.size(); ++i) {
            const Vector3<double> los = attacker_ecef[i] - f.ecef;
            if (mask >= 0.0 && f.up.dot(los) <= 0.0) continue;  // below the horizon plane
            const Topocentric topo = topocentric_from(f.ecef, f.enu, attacker_ecef[i]);
            if (!visible(topo, mask)) continue;
            visible_now.push_back(
                {static_cast<std::uint32_t>(i), topo.range_km, angle_between_deg(boresight, los)});
          }
        }
        view.interferers = visible_now;
        visit(chunk, s, step, view);
      }
    }
  };

  if (chunks <= 1) {
    work(0, 0, steps);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t per_chunk = (steps + chunks - 1) / chunks;
  for (unsigned c = 0; c < chunks; ++c) {
    const std::size_t first = std::min(steps, c * per_chunk);
    const std::size_t last = std::min(steps, first + per_chunk);
    pool.emplace_back(work, c, first, last);
  }
  for (auto& t : pool) t.join();
}

void finish_record(StepRecord& rec, double signal_dbw, std::span<const double> interferers,
                   double noise_dbw, InterferenceCombiner combiner) {
  rec.service = true;
  rec.signal_dbw = signal_dbw;
  rec.noise_dbw = noise_dbw;
  rec.n_visible_interferers = static_cast<std::uint32_t>(interferers.size());
  const double interference_w = combine_interference_w(interferers, combiner);
  rec.interference_dbw = interference_w > 0.0 ? watts_to_db(interference_w) : kNoPower;
  rec.strongest_interferer_dbw =
      interferers.empty() ? kNoPower : *std::max_element(interferers.begin(), interferers.end());
  rec.sinr_db =
      10.0 * std::log10(db_to_watts(signal_dbw) / (db_to_watts(noise_dbw) + interference_w));
}

void mark_no_service(StepRecord& rec, double noise_dbw) {
  rec.service = false;
  rec.signal_dbw = std::numeric_limits<double>::quiet_NaN();
  rec.sinr_db = std::numeric_limits<double>::quiet_NaN();
  rec.noise_dbw = noise_dbw;
}

std::vector<SinrSeries> empty_series(const Scenario& scenario, std::size_t steps) {
  std::vector<SinrSeries> out(scenario.stations.size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s].station = scenario.stations[s];
    out[s].start = scenario.start;
    out[s].step_s = scenario.step_s;
    out[s].records.resize(steps);
    for (std::size_t k = 0; k < steps; ++k) out[s].records[k].time = scenario.time_at(k);
  }
  return out;
}

}  // namespace

std::vector<SinrSeries> run_scenario(const Scenario& scenario, const ExecutionOptions& options) {
  scenario.validate();
  const std::size_t steps = scenario.step_count();
  const unsigned chunks = resolve_threads(options, steps);
  auto series = empty_series(scenario, steps);
  const double noise_dbw = noise_power_dbw(scenario.noise);
  const double boresight_gain = gain_db(scenario.pattern, 0.0);
  const LinkParams& victim = scenario.victim.link;
  const LinkParams& attacker = scenario.attacker.link;

  std::vector<std::vector<double>> scratch(chunks);
  geometry_pass(scenario, chunks,
                [&](unsigned chunk, std::size_t s, std::size_t k, const StationStepView& view) {
                  StepRecord& rec = series[s].records[k];
                  if (!view.service) {
                    mark_no_service(rec, noise_dbw);
                    return;
                  }
                  rec.geo_index = view.geo_index;
                  const double signal = received_power_dbw(
                      victim, boresight_gain, fspl_db(view.geo_distance_km, victim.frequency_hz));
                  auto& powers = scratch[chunk];
                  powers.clear();
                  for (const InterfererView& v : view.interferers) {
                    powers.push_back(received_power_dbw(attacker, gain_db(scenario.pattern, v.phi_deg),
                                                        fspl_db(v.distance_km, attacker.frequency_hz)));
                  }
                  finish_record(rec, signal, powers, noise_dbw, scenario.combiner);
                });
  return series;
}

GeometryCache build_geometry_cache(const Scenario& scenario, const ExecutionOptions& options) {
  scenario.validate();
  const std::size_t steps = scenario.step_count();
  const unsigned chunks = resolve_threads(options, steps);
  const double boresight_gain = gain_db(scenario.pattern, 0.0);

  GeometryCache cache;
  cache.fingerprint = geometry_fingerprint(scenario);
  cache.start = scenario.start;
  cache.step_s = scenario.step_s;
  cache.step_count = steps;
  cache.attacker_count = scenario.attacker.satellites.size();
  cache.stations.resize(scenario.stations.size());

  // Chunk-local buffers, concatenated in chunk (time) order afterwards so the
  // layout does not depend on the worker count.
  struct ChunkBuffer {
    std::vector<std::uint32_t> interferer;
    std::vector<double> contribution_db;
  };
  std::vector<std::vector<ChunkBuffer>> buffers(chunks,
                                                std::vector<ChunkBuffer>(scenario.stations.size()));
  for (std::size_t s = 0; s < cache.stations.size(); ++s) {
    cache.stations[s].station = scenario.stations[s];
    cache.stations[s].steps.resize(steps);
  }

  geometry_pass(scenario, chunks,
                [&](unsigned chunk, std::size_t s, std::size_t k, const StationStepView& view) {
                  GeometryCache::Step& step = cache.stations[s].steps[k];
                  ChunkBuffer& buf = buffers[chunk][s];
                  step.service = view.service;
                  step.geo_index = view.geo_index;
                  step.begin = static_cast<std::uint32_t>(buf.contribution_db.size());
                  if (view.service) {
                    step.victim_contribution_db =
                        boresight_gain - 20.0 * std::log10(view.geo_distance_km);
                    for (const InterfererView& v : view.interferers) {
                      buf.interferer.push_back(v.index);
                      buf.contribution_db.push_back(gain_db(scenario.pattern, v.phi_deg) -
                                                    20.0 * std::log10(v.distance_km));
                    }
                  }
                  step.end = static_cast<std::uint32_t>(buf.contribution_db.size());
                });

  const std::size_t per_chunk = (steps + chunks - 1) / chunks;
  for (std::size_t s = 0; s < cache.stations.size(); ++s) {
    auto& st = cache.stations[s];
    std::size_t total = 0;
    for (unsigned c = 0; c < chunks; ++c) total += buffers[c][s].contribution_db.size();
    st.interferer.reserve(total);
    st.contribution_db.reserve(total);
    for (unsigned c = 0; c < chunks; ++c) {
      const auto offset = static_cast<std::uint32_t>(st.contribution_db.size());
      const std::size_t first = std::min(steps, c * per_chunk);
      const std::size_t last = std::min(steps, first + per_chunk);
      for (std::size_t k = first; k < last; ++k) {
        st.steps[k].begin += offset;
        st.steps[k].end += offset;
      }
      auto& buf = buffers[c][s];
      st.interferer.insert(st.interferer.end(), buf.interferer.begin(), buf.interferer.end());
      st.contribution_db.insert(st.contribution_db.end(), buf.contribution_db.begin(),
                                buf.contribution_db.end());
      buf = {};
    }
  }
  return cache;
}

namespace {

void check_cache(const GeometryCache& cache, const Scenario& scenario) {
  if (cache.fingerprint != geometry_fingerprint(scenario)) {
    throw ConsistencyError("geometry cache was built from a different scenario (fingerprint " +
                           cache.fingerprint.substr(0, 12) + "...)");
  }
}

/// SINR at one cached step; `powers` is scratch space.
double cached_sinr(const GeometryCache::Station& st, const GeometryCache::Step& step,
                   const LinkParams& victim, const LinkParams& attacker, double noise_dbw,
                   InterferenceCombiner combiner, std::vector<double>& powers,
                   StepRecord* rec = nullptr) {
  const double signal = reconstruct_power_dbw(step.victim_contribution_db, victim);
  powers.clear();
  for (std::uint32_t j = step.begin; j < step.end; ++j) {
    powers.push_back(reconstruct_power_dbw(st.contribution_db[j], attacker));
  }
  if (rec != nullptr) {
    rec->geo_index = step.geo_index;
    finish_record(*rec, signal, powers, noise_dbw, combiner);
    return rec->sinr_db;
  }
  const double interference_w = combine_interference_w(powers, combiner);
  return 10.0 * std::log10(db_to_watts(signal) / (db_to_watts(noise_dbw) + interference_w));
}

}  // namespace

std::vector<SinrSeries> reconstruct_series(const GeometryCache& cache, const Scenario& scenario,
                                           double attacker_eirp_dbw) {
  check_cache(cache, scenario);
  auto series = empty_series(scenario, cache.step_count);
  const double noise_dbw = noise_power_dbw(scenario.noise);
  LinkParams attacker = scenario.attacker.link;
  attacker.eirp_dbw = attacker_eirp_dbw;
  std::vector<double> powers;
  for (std::size_t s = 0; s < cache.stations.size(); ++s) {
    const auto& st = cache.stations[s];
    for (std::size_t k = 0; k < cache.step_count; ++k) {
      StepRecord& rec = series[s].records[k];
      if (!st.steps[k].service) {
        mark_no_service(rec, noise_dbw);
        continue;
      }
      cached_sinr(st, st.steps[k], scenario.victim.link, attacker, noise_dbw, scenario.combiner,
                  powers, &rec);
    }
  }
  return series;
}

SweepResult sweep_power(const GeometryCache& cache, std::span<const double> eirp_grid_dbw,
                        const Scenario& scenario, const ExecutionOptions& options) {
  check_cache(cache, scenario);
  SweepResult result;
  result.eirp_dbw.assign(eirp_grid_dbw.begin(), eirp_grid_dbw.end());
  result.stations.resize(cache.stations.size());
  const double noise_dbw = noise_power_dbw(scenario.noise);
  const std::size_t n_stations = cache.stations.size();

  // jammed[s][g], in-service counts per station
  std::vector<std::vector<std::size_t>> jammed(n_stations,
                                               std::vector<std::size_t>(eirp_grid_dbw.size(), 0));
  std::vector<std::size_t> in_service(n_stations, 0);

  auto station_work = [&](std::size_t s) {
    const auto& st = cache.stations[s];
    std::vector<double> powers;
    LinkParams attacker = scenario.attacker.link;
    for (const auto& step : st.steps) {
      if (!step.service) continue;
      ++in_service[s];
      for (std::size_t g = 0; g < eirp_grid_dbw.size(); ++g) {
        attacker.eirp_dbw = eirp_grid_dbw[g];
        const double sinr = cached_sinr(st, step, scenario.victim.link, attacker, noise_dbw,
                                        scenario.combiner, powers);
        if (sinr < scenario.jam_threshold_db) ++jammed[s][g];
      }
    }
  };

  const unsigned workers = resolve_threads(options, n_stations);
  if (workers <= 1) {
    for (std::size_t s = 0; s < n_stations; ++s) station_work(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < n_stations; s += workers) station_work(s);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::size_t total_service = 0;
  for (std::size_t s = 0; s < n_stations; ++s) total_service += in_service[s];
  result.pooled_pct.assign(eirp_grid_dbw.size(), 0.0);
  for (std::size_t s = 0; s < n_stations; ++s) {
    auto& curve = result.stations[s];
    curve.station = cache.stations[s].station.name;
    curve.jamming_pct.resize(eirp_grid_dbw.size());
    for (std::size_t g = 0; g < eirp_grid_dbw.size(); ++g) {
      curve.jamming_pct[g] =
          in_service[s] == 0 ? 0.0 : 100.0 * double(jammed[s][g]) / double(in_service[s]);
    }
  }
  for (std::size_t g = 0; g < eirp_grid_dbw.size(); ++g) {
    std::size_t total_jammed = 0;
    for (std::size_t s = 0; s < n_stations; ++s) total_jammed += jammed[s][g];
    result.pooled_pct[g] = total_service == 0 ? 0.0 : 100.0 * double(total_jammed) / double(total_service);
  }
  return result;
}

double eirp_for_jamming_pct(const GeometryCache& cache, const Scenario& scenario, double target_pct,
                            double low_dbw, double high_dbw, double tolerance_db) {
  auto pooled = [&](double eirp) {
    const double grid[] = {eirp};
    return sweep_power(cache, grid, scenario, ExecutionOptions{1}).pooled_pct.front();
  };
  if (pooled(low_dbw) >= target_pct) return low_dbw;
  if (pooled(high_dbw) < target_pct) {
    throw DomainError("jamming target " + std::to_string(target_pct) +
                      "% is not reached within the EIRP bracket");
  }
  while (high_dbw - low_dbw > tolerance_db) {
    const double mid = 0.5 * (low_dbw + high_dbw);
    (pooled(mid) >= target_pct ? high_dbw : low_dbw) = mid;
  }
  return high_dbw;
}

}  // namespace leojam
