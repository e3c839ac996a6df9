#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "leojam/constellation.hpp"
#include "leojam/geometry.hpp"
#include "leojam/rfmodel.hpp"
#include "leojam/time.hpp"

namespace leojam {

/// How interferer powers (in watts) are merged into a single interference term.
/// Root-sum-square sqrt(sum I_j^2) is the reference model; the plain power sum
/// is available for sensitivity runs.
enum class InterferenceCombiner { kRootSumSquare, kPowerSum };

std::string_view to_string(InterferenceCombiner combiner);
InterferenceCombiner combiner_from_string(std::string_view name);

struct Scenario {
  Constellation victim;
  Constellation attacker;
  std::vector<GroundStation> stations;
  GainPattern pattern = GainPattern::erc();
  NoiseParams noise;
  UtcInstant start;
  double duration_s = 86400.0;
  double step_s = 10.0;
  double elevation_mask_deg = 15.0;
  double jam_threshold_db = 10.0;
  InterferenceCombiner combiner = InterferenceCombiner::kRootSumSquare;

  void validate() const;
  std::size_t step_count() const;
  UtcInstant time_at(std::size_t step) const {
    return start + static_cast<double>(step) * step_s;
  }

  bool operator==(const Scenario&) const = default;
};

/// Hash of every input that influences simulated values.
std::string scenario_fingerprint(const Scenario& scenario);
/// The same hash without the attacker EIRP, which the geometry cache does not depend on.
std::string geometry_fingerprint(const Scenario& scenario);

inline constexpr double kNoPower = -std::numeric_limits<double>::infinity();

struct StepRecord {
  UtcInstant time;
  bool service = true;  // false: no victim satellite above the horizon
  std::uint32_t geo_index = 0;
  double signal_dbw = 0.0;
  double interference_dbw = kNoPower;
  double noise_dbw = 0.0;
  double sinr_db = 0.0;
  std::uint32_t n_visible_interferers = 0;
  double strongest_interferer_dbw = kNoPower;
};

struct SinrSeries {
  GroundStation station;
  UtcInstant start;
  double step_s = 0.0;
  std::vector<StepRecord> records;

  std::size_t service_steps() const;
};

struct ExecutionOptions {
  unsigned threads = 0;  // 0 picks the hardware concurrency
};

/// Combined interference in watts; summation runs in the given order.
double combine_interference_w(std::span<const double> interferer_dbw,
                              InterferenceCombiner combiner = InterferenceCombiner::kRootSumSquare);

/// SINR in dB of a carrier against noise plus combined interference.
double combine_sinr(double carrier_dbw, std::span<const double> interferer_dbw, double noise_dbw,
                    InterferenceCombiner combiner = InterferenceCombiner::kRootSumSquare);

/// Steps the scenario and evaluates the full link budget at every station and step.
std::vector<SinrSeries> run_scenario(const Scenario& scenario, const ExecutionOptions& options = {});

/// Per-step geometry reduced to the parts of the link budget that do not depend
/// on transmit power or frequency: gain(phi) - 20 log10(d_km) for each visible
/// interferer and for the chosen victim satellite.
struct GeometryCache {
  struct Step {
    bool service = false;
    std::uint32_t geo_index = 0;
    double victim_contribution_db = 0.0;
    std::uint32_t begin = 0;  // interferer entries [begin, end) in the station arrays
    std::uint32_t end = 0;
  };

  struct Station {
    GroundStation station;
    std::vector<Step> steps;
    std::vector<std::uint32_t> interferer;
    std::vector<double> contribution_db;
  };

  std::string fingerprint;
  UtcInstant start;
  double step_s = 0.0;
  std::size_t step_count = 0;
  std::size_t attacker_count = 0;
  std::vector<Station> stations;

  std::size_t entry_count() const;
};

GeometryCache build_geometry_cache(const Scenario& scenario, const ExecutionOptions& options = {});

/// Received power of a cached contribution at the given link parameters.
inline double reconstruct_power_dbw(double contribution_db, const LinkParams& link) {
  return link.eirp_dbw + contribution_db - kFsplConstantDb - 20.0 * std::log10(link.frequency_hz) -
         link.atmos_atten_db;
}

/// Rebuilds the SINR series from the cache with the attacker transmitting at `attacker_eirp_dbw`.
std::vector<SinrSeries> reconstruct_series(const GeometryCache& cache, const Scenario& scenario,
                                           double attacker_eirp_dbw);

struct SweepResult {
  struct StationCurve {
    std::string station;
    std::vector<double> jamming_pct;
  };
  std::vector<double> eirp_dbw;
  std::vector<StationCurve> stations;
  std::vector<double> pooled_pct;  // all stations' in-service steps together
};

/// Jamming percentage (SINR strictly below the scenario threshold) for every
/// attacker EIRP in the grid. The cache must come from the same scenario.
SweepResult sweep_power(const GeometryCache& cache, std::span<const double> eirp_grid_dbw,
                        const Scenario& scenario, const ExecutionOptions& options = {});

/// Smallest attacker EIRP at which the pooled jamming percentage reaches
/// `target_pct`, bracketed by [low_dbw, high_dbw] and resolved to `tolerance_db`.
double eirp_for_jamming_pct(const GeometryCache& cache, const Scenario& scenario, double target_pct,
                            double low_dbw = -50.0, double high_dbw = 120.0,
                            double tolerance_db = 1e-3);

}  // namespace leojam
