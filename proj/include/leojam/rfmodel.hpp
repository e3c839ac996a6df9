#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "leojam/constants.hpp"
#include "leojam/errors.hpp"

namespace leojam {

/// Downlink parameters shared by every satellite of one constellation.
struct LinkParams {
  double eirp_dbw = 0.0;
  double frequency_hz = 19.2e9;
  double bandwidth_hz = 250e6;
  double atmos_atten_db = 0.35;

  void validate() const {
    if (!std::isfinite(eirp_dbw)) throw ConfigError("EIRP must be finite");
    if (!(frequency_hz > 0.0)) throw ConfigError("frequency must be positive");
    if (!(bandwidth_hz > 0.0)) throw ConfigError("bandwidth must be positive");
    if (!(atmos_atten_db >= 0.0)) throw ConfigError("atmospheric attenuation must be >= 0 dB");
  }

  bool operator==(const LinkParams&) const = default;
};

struct NoiseParams {
  double system_temp_k = 290.0;
  double bandwidth_hz = 250e6;

  void validate() const {
    if (!(system_temp_k > 0.0)) throw ConfigError("system temperature must be positive");
    if (!(bandwidth_hz > 0.0)) throw ConfigError("noise bandwidth must be positive");
  }

  bool operator==(const NoiseParams&) const = default;
};

enum class PatternKind { kErc, kItuReference, kConstant };

std::string_view to_string(PatternKind kind);
PatternKind pattern_kind_from_string(std::string_view name);

/// Receive antenna gain versus off-boresight angle.
///
/// The ERC dish pattern needs D/lambda, the first-sidelobe level G1 and the
/// main-lobe edge phi_m. None of these are free: D/lambda follows from
/// 20 log10(D/lambda) = Gmax - 7.7, then G1 = 2 + 15 log10(D/lambda) and
/// phi_m = (20 lambda / D) sqrt(Gmax - G1).
struct GainPattern {
  PatternKind kind = PatternKind::kErc;
  double g_max_dbi = 44.0;
  double d_over_lambda = 0.0;
  double g1_dbi = 0.0;
  double phi_m_deg = 0.0;

  static GainPattern erc(double g_max_dbi = 44.0);
  static GainPattern itu_reference(double g_max_dbi = 44.0);
  static GainPattern constant(double g_max_dbi = 44.0);
  static GainPattern of_kind(PatternKind kind, double g_max_dbi = 44.0);

  /// Start of the far-sidelobe branch, 100 lambda / D degrees.
  double sidelobe_start_deg() const { return 100.0 / d_over_lambda; }

  void validate() const;

  bool operator==(const GainPattern&) const = default;
};

// Phi beyond which every pattern sits on its -10 dBi back-lobe floor.
inline constexpr double kBackLobeStartDeg = 48.0;
inline constexpr double kBackLobeGainDbi = -10.0;

/// Gain in dBi at `phi_deg` in [0, 180].
inline double gain_db(const GainPattern& pattern, double phi_deg) {
  if (!(phi_deg >= 0.0 && phi_deg <= 180.0)) {
    throw DomainError("off-boresight angle " + std::to_string(phi_deg) + " outside [0, 180]");
  }
  switch (pattern.kind) {
    case PatternKind::kConstant:
      return pattern.g_max_dbi;
    case PatternKind::kItuReference: {
      if (phi_deg >= kBackLobeStartDeg) return kBackLobeGainDbi;
      if (phi_deg == 0.0) return pattern.g_max_dbi;
      return std::min(pattern.g_max_dbi, 32.0 - 25.0 * std::log10(phi_deg));
    }
    case PatternKind::kErc:
    default: {
      if (phi_deg < pattern.phi_m_deg) {
        const double x = pattern.d_over_lambda * phi_deg / 20.0;
        return pattern.g_max_dbi - x * x;
      }
      if (phi_deg < pattern.sidelobe_start_deg()) return pattern.g1_dbi;
      if (phi_deg < kBackLobeStartDeg) {
        return 52.0 - 10.0 * std::log10(pattern.d_over_lambda) - 25.0 * std::log10(phi_deg);
      }
      return kBackLobeGainDbi;
    }
  }
}

/// Free-space path loss with distance in km and frequency in Hz.
inline double fspl_db(double distance_km, double frequency_hz) {
  if (!(distance_km > 0.0) || !(frequency_hz > 0.0)) {
    throw DomainError("path loss needs positive distance and frequency");
  }
  return 20.0 * std::log10(distance_km) + 20.0 * std::log10(frequency_hz) + kFsplConstantDb;
}

inline double received_power_dbw(const LinkParams& link, double gain_dbi, double fspl) {
  return link.eirp_dbw + gain_dbi - fspl - link.atmos_atten_db;
}

inline double noise_power_dbw(const NoiseParams& noise) {
  return 10.0 * std::log10(kBoltzmann * noise.system_temp_k * noise.bandwidth_hz);
}

inline double db_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }

inline double watts_to_db(double watts) {
  if (!(watts > 0.0)) throw DomainError("power in watts must be positive to express in dBW");
  return 10.0 * std::log10(watts);
}

/// Total EIRP from a spectral density quoted per 4 kHz reference bandwidth.
inline double eirp_from_density_dbw(double density_dbw_per_4khz, double bandwidth_hz) {
  return density_dbw_per_4khz + 10.0 * std::log10(bandwidth_hz / 4e3);
}

}  // namespace leojam
