#include "leojam/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "leojam/digest.hpp"
#include "leojam/errors.hpp"

namespace leojam {

std::string sanitize_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "_" : out;
}

std::string format_value(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value == 0.0 ? 0.0 : value);  // no "-0"
  return buf;
}

std::string sinr_csv(const SinrSeries& series) {
  std::string out = "time_utc,signal_dbw,interference_dbw,noise_dbw,sinr_db,n_interferers\n";
  out.reserve(series.records.size() * 72);
  for (const StepRecord& r : series.records) {
    out += r.time.iso8601();
    out += ',' + format_value(r.signal_dbw);
    out += ',' + format_value(r.interference_dbw);
    out += ',' + format_value(r.noise_dbw);
    out += ',' + format_value(r.sinr_db);
    out += ',' + std::to_string(r.n_visible_interferers);
    out += '\n';
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "name,mean_sinr_db,mean_jamming_pct,mean_jam_period_s\n";
  for (const SummaryRow& r : rows) {
    out += r.constellation + ',' + format_value(r.mean_sinr_db) + ',' +
           format_value(r.mean_jamming_pct) + ',' + format_value(r.mean_jam_period_s) + '\n';
  }
  return out;
}

std::string histogram_csv(const RunHistogram& histogram) {
  std::string out = "bin_start_s,bin_end_s,count\n";
  for (std::size_t k = 0; k < histogram.counts.size(); ++k) {
    out += format_value(static_cast<double>(k) * histogram.bin_s) + ',' +
           format_value(static_cast<double>(k + 1) * histogram.bin_s) + ',' +
           std::to_string(histogram.counts[k]) + '\n';
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep, std::size_t station) {
  const auto& curve = sweep.stations.at(station).jamming_pct;
  std::string out = "eirp_dbw,jamming_pct\n";
  for (std::size_t i = 0; i < sweep.eirp_dbw.size(); ++i) {
    out += format_value(sweep.eirp_dbw[i]) + ',' + format_value(curve[i]) + '\n';
  }
  return out;
}

std::string gain_pattern_csv(const std::vector<GainPattern>& patterns, const GainCurve& curve) {
  std::string out = "phi_deg";
  for (const GainPattern& p : patterns) out += ",gain_" + std::string(to_string(p.kind)) + "_dbi";
  out += '\n';
  for (std::size_t i = 0; i < curve.phi_deg.size(); ++i) {
    out += format_value(curve.phi_deg[i]);
    for (const auto& row : curve.gain_dbi) out += ',' + format_value(row[i]);
    out += '\n';
  }
  return out;
}

std::string manifest_json(const Manifest& manifest) {
  nlohmann::ordered_json j;
  j["fingerprint"] = manifest.fingerprint;
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : manifest.files) {
    j["files"].push_back({{"file", f.file}, {"sha256", f.sha256}});
  }
  return j.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

Manifest emit_results(const ResultBundle& bundle, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());

  Manifest manifest{bundle.fingerprint, {}};
  std::set<std::string> used;
  auto emit = [&](std::string name, const std::string& content) {
    if (!used.insert(name).second) throw ConfigError("two outputs map to file name '" + name + "'");
    write_file(out_dir / name, content);
    manifest.files.push_back({std::move(name), sha256_hex(content)});
  };

  for (const SinrSeries& s : bundle.series) {
    emit("sinr_" + sanitize_name(s.station.name) + ".csv", sinr_csv(s));
  }
  if (!bundle.summary.empty()) emit("summary.csv", summary_csv(bundle.summary));
  if (bundle.histogram) emit("runs_histogram.csv", histogram_csv(*bundle.histogram));
  if (bundle.sweep) {
    for (std::size_t i = 0; i < bundle.sweep->stations.size(); ++i) {
      emit("sweep_" + sanitize_name(bundle.sweep->stations[i].station) + ".csv",
           sweep_csv(*bundle.sweep, i));
    }
  }
  if (!bundle.patterns.empty()) emit("gain_pattern.csv", gain_pattern_csv(bundle.patterns, bundle.gain_curve));

  write_file(out_dir / "manifest.json", manifest_json(manifest));
  return manifest;
}

}  // namespace leojam
