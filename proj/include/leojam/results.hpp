#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "leojam/analysis.hpp"

namespace leojam {

/// Everything one invocation produces, ready to be written out.
struct ResultBundle {
  std::string fingerprint;
  std::vector<SinrSeries> series;
  std::vector<SummaryRow> summary;
  std::optional<RunHistogram> histogram;
  std::optional<SweepResult> sweep;
  std::vector<GainPattern> patterns;  // gain_pattern.csv is written when non-empty
  GainCurve gain_curve;
};

struct ManifestEntry {
  std::string file;
  std::string sha256;
};

struct Manifest {
  std::string fingerprint;
  std::vector<ManifestEntry> files;
};

/// File-name-safe form of a station name: anything outside [A-Za-z0-9_-] becomes '_'.
std::string sanitize_name(std::string_view name);

/// Fixed 6-significant-digit rendering used in every emitted table.
std::string format_value(double value);

std::string sinr_csv(const SinrSeries& series);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string histogram_csv(const RunHistogram& histogram);
std::string sweep_csv(const SweepResult& sweep, std::size_t station);
std::string gain_pattern_csv(const std::vector<GainPattern>& patterns, const GainCurve& curve);
std::string manifest_json(const Manifest& manifest);

/// Writes the bundle's tables plus manifest.json into `out_dir` (created if
/// needed). Throws std::runtime_error naming the path on I/O failure.
Manifest emit_results(const ResultBundle& bundle, const std::filesystem::path& out_dir);

}  // namespace leojam
