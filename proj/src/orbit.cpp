#include "leojam/orbit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "leojam/constants.hpp"
#include "leojam/errors.hpp"
#include "leojam/geometry.hpp"

namespace leojam {

double normalize_degrees(double angle_deg) {
  double wrapped = std::fmod(angle_deg, 360.0);
  if (wrapped < 0.0) wrapped += 360.0;
  // fmod of a tiny negative value can round up to exactly 360
  return wrapped >= 360.0 ? 0.0 : wrapped;
}

double KeplerianElements::mean_motion_rad_s() const {
  return std::sqrt(kMuEarth / (semi_major_axis_km * semi_major_axis_km * semi_major_axis_km));
}

double KeplerianElements::period_s() const { return 2.0 * kPi / mean_motion_rad_s(); }

void KeplerianElements::validate() const {
  if (!(semi_major_axis_km > kEarthRadiusKm)) {
    throw ConfigError("semi-major axis " + std::to_string(semi_major_axis_km) +
                      " km is not above the Earth's surface");
  }
  if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
    throw ConfigError("eccentricity " + std::to_string(eccentricity) + " outside [0, 1)");
  }
  if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0)) {
    throw ConfigError("inclination " + std::to_string(inclination_deg) + " deg outside [0, 180]");
  }
  for (double angle : {raan_deg, arg_latitude_deg, arg_perigee_deg}) {
    if (!(angle >= 0.0 && angle < 360.0)) {
      throw ConfigError("orbital angle " + std::to_string(angle) + " deg not normalized to [0, 360)");
    }
  }
}

void WalkerSpec::validate() const {
  if (planes == 0 || total_satellites == 0) {
    throw ConfigError("walker constellation needs at least one plane and one satellite");
  }
  if (total_satellites % planes != 0) {
    throw ConfigError("walker total " + std::to_string(total_satellites) +
                      " is not divisible by plane count " + std::to_string(planes));
  }
  if (phasing_factor >= planes) {
    throw ConfigError("walker phasing factor " + std::to_string(phasing_factor) +
                      " must be below the plane count " + std::to_string(planes));
  }
  if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0)) {
    throw ConfigError("walker inclination outside [0, 180] deg");
  }
  if (!(altitude_km > 0.0)) {
    throw ConfigError("walker altitude must be positive");
  }
}

std::vector<KeplerianElements> generate_walker(const WalkerSpec& spec, UtcInstant epoch) {
  spec.validate();
  const std::size_t per_plane = spec.total_satellites / spec.planes;
  const double raan_step = 360.0 / static_cast<double>(spec.planes);
  const double slot_step = 360.0 / static_cast<double>(per_plane);
  const double phase_step =
      360.0 * static_cast<double>(spec.phasing_factor) / static_cast<double>(spec.total_satellites);

  std::vector<KeplerianElements> out;
  out.reserve(spec.total_satellites);
  for (std::size_t plane = 0; plane < spec.planes; ++plane) {
    for (std::size_t slot = 0; slot < per_plane; ++slot) {
      KeplerianElements e;
      e.semi_major_axis_km = kEarthRadiusKm + spec.altitude_km;
      e.eccentricity = 0.0;
      e.inclination_deg = spec.inclination_deg;
      e.raan_deg = normalize_degrees(raan_step * static_cast<double>(plane));
      e.arg_latitude_deg = normalize_degrees(slot_step * static_cast<double>(slot) +
                                             phase_step * static_cast<double>(plane));
      e.epoch = epoch;
      out.push_back(e);
    }
  }
  return out;
}

// --- TLE -------------------------------------------------------------------

namespace {

constexpr std::size_t kTleLineLength = 69;

std::string_view strip_cr(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  return line;
}

int tle_checksum(std::string_view line) {
  int sum = 0;
  for (std::size_t i = 0; i + 1 < kTleLineLength; ++i) {
    const char c = line[i];
    if (c >= '0' && c <= '9') sum += c - '0';
    if (c == '-') sum += 1;
  }
  return sum % 10;
}

void check_line(std::string_view line, int line_no) {
  if (line.size() != kTleLineLength) {
    throw ParseError("TLE line has " + std::to_string(line.size()) + " characters, expected 69",
                     line_no, static_cast<int>(std::min(line.size(), kTleLineLength)) + 1);
  }
  if (line[0] != static_cast<char>('0' + line_no)) {
    throw ParseError("TLE line does not start with line number " + std::to_string(line_no),
                     line_no, 1);
  }
  const char check = line[68];
  if (check < '0' || check > '9' || check - '0' != tle_checksum(line)) {
    throw ParseError("TLE checksum mismatch (expected " + std::to_string(tle_checksum(line)) + ")",
                     line_no, 69);
  }
}

// Columns are 1-based and inclusive, as in the format definition.
double field(std::string_view line, int line_no, int first_col, int last_col,
             bool implied_decimal = false) {
  std::string_view raw = line.substr(static_cast<std::size_t>(first_col - 1),
                                     static_cast<std::size_t>(last_col - first_col + 1));
  std::size_t lead = 0;
  while (lead < raw.size() && raw[lead] == ' ') ++lead;
  std::string_view text = raw.substr(lead);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::string digits = implied_decimal ? "0." + std::string(text) : std::string(text);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ParseError("unparsable numeric field '" + std::string(raw) + "'", line_no,
                     first_col + static_cast<int>(lead));
  }
  return value;
}

}  // namespace

KeplerianElements parse_tle(std::string_view line1, std::string_view line2) {
  line1 = strip_cr(line1);
  line2 = strip_cr(line2);
  check_line(line1, 1);
  check_line(line2, 2);

  const double epoch_year = field(line1, 1, 19, 20);
  const double epoch_day = field(line1, 1, 21, 32);
  if (epoch_day < 1.0 || epoch_day >= 367.0) {
    throw ParseError("TLE epoch day-of-year out of range", 1, 21);
  }

  const double inclination = field(line2, 2, 9, 16);
  const double raan = field(line2, 2, 18, 25);
  const double eccentricity = field(line2, 2, 27, 33, /*implied_decimal=*/true);
  const double arg_perigee = field(line2, 2, 35, 42);
  const double mean_anomaly = field(line2, 2, 44, 51);
  const double mean_motion_rev_day = field(line2, 2, 53, 63);
  if (!(mean_motion_rev_day > 0.0)) {
    throw ParseError("TLE mean motion must be positive", 2, 53);
  }

  const double n = mean_motion_rev_day * 2.0 * kPi / 86400.0;
  KeplerianElements e;
  e.semi_major_axis_km = std::cbrt(kMuEarth / (n * n));
  e.eccentricity = eccentricity;
  e.inclination_deg = inclination;
  e.raan_deg = normalize_degrees(raan);
  e.arg_perigee_deg = normalize_degrees(arg_perigee);
  e.arg_latitude_deg = normalize_degrees(arg_perigee + mean_anomaly);
  e.epoch = UtcInstant::from_tle_epoch(static_cast<int>(epoch_year), epoch_day);
  e.validate();
  return e;
}

std::pair<std::string, std::string> format_tle(const KeplerianElements& e, int catalog_number) {
  // Recover the two-digit year and fractional day from the epoch.
  const std::string iso = e.epoch.iso8601();
  const int year = std::stoi(iso.substr(0, 4));
  const double day_of_year = (e.epoch - UtcInstant::from_civil(year, 1, 1)) / 86400.0 + 1.0;
  const double rev_per_day = e.mean_motion_rad_s() * 86400.0 / (2.0 * kPi);
  const double mean_anomaly = normalize_degrees(e.arg_latitude_deg - e.arg_perigee_deg);
  const long ecc_digits = std::lround(e.eccentricity * 1e7);

  char l1[80];
  char l2[80];
  std::snprintf(l1, sizeof l1, "1 %05dU %-8s %02d%012.8f %10s %8s %8s 0 %4d", catalog_number,
                "00000A", year % 100, day_of_year, " .00000000", " 00000-0", " 00000-0", 999);
  std::snprintf(l2, sizeof l2, "2 %05d %8.4f %8.4f %07ld %8.4f %8.4f %11.8f%5d", catalog_number,
                e.inclination_deg, e.raan_deg, ecc_digits, e.arg_perigee_deg, mean_anomaly,
                rev_per_day, 0);
  std::string line1(l1);
  std::string line2(l2);
  line1 += static_cast<char>('0' + tle_checksum(line1 + "0"));
  line2 += static_cast<char>('0' + tle_checksum(line2 + "0"));
  return {line1, line2};
}

std::vector<NamedElements> parse_tle_text(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    std::string_view trimmed = strip_cr(line);
    if (trimmed.find_first_not_of(" \t") == std::string_view::npos) continue;
    lines.emplace_back(trimmed);
  }

  std::vector<NamedElements> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    std::string name;
    if (lines[i].size() != kTleLineLength || lines[i][0] != '1') {
      name = lines[i];
      while (!name.empty() && name.back() == ' ') name.pop_back();
      if (name.rfind("0 ", 0) == 0) name.erase(0, 2);
      ++i;
    }
    if (i + 1 >= lines.size()) {
      throw ParseError("truncated TLE set", static_cast<int>(i) + 1, 1);
    }
    NamedElements entry;
    entry.elements = parse_tle(lines[i], lines[i + 1]);
    entry.name = name.empty() ? lines[i].substr(2, 5) : name;
    out.push_back(std::move(entry));
    i += 2;
  }
  return out;
}

std::vector<NamedElements> load_tle_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open TLE file '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_tle_text(buf.str());
}

// --- Propagation ---------------------------------------------------------------

KeplerianElements place_geo(double longitude_deg, UtcInstant epoch) {
  if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0)) {
    throw DomainError("GEO longitude " + std::to_string(longitude_deg) + " outside [-180, 180]");
  }
  KeplerianElements e;
  e.semi_major_axis_km = kGeoSemiMajorAxisKm;
  e.eccentricity = 0.0;
  e.inclination_deg = 0.0;
  e.raan_deg = 0.0;
  e.arg_latitude_deg = normalize_degrees(longitude_deg + gmst_deg(epoch));
  e.epoch = epoch;
  return e;
}

double solve_kepler(double mean_anomaly_rad, double eccentricity) {
  constexpr int kMaxIterations = 50;
  constexpr double kTolerance = 1e-12;
  const double m = std::remainder(mean_anomaly_rad, 2.0 * kPi);
  double ecc_anomaly = eccentricity < 0.8 ? m : std::copysign(kPi, m);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double f = ecc_anomaly - eccentricity * std::sin(ecc_anomaly) - m;
    const double step = f / (1.0 - eccentricity * std::cos(ecc_anomaly));
    ecc_anomaly -= step;
    if (std::abs(step) < kTolerance) return ecc_anomaly + (mean_anomaly_rad - m);
  }
  char msg[160];
  std::snprintf(msg, sizeof msg,
                "Kepler iteration did not converge in %d steps (e = %.12g, M = %.12g rad)",
                kMaxIterations, eccentricity, mean_anomaly_rad);
  throw NumericalError(msg);
}

OrbitPropagator::OrbitPropagator(const KeplerianElements& elements)
    : elements_(elements), epoch_(elements.epoch) {
  mean_motion_ = elements.mean_motion_rad_s();
  arg_perigee_ = elements.arg_perigee_deg * kDegToRad;
  phase0_ = elements.eccentricity == 0.0
                ? elements.arg_latitude_deg * kDegToRad
                : (elements.arg_latitude_deg - elements.arg_perigee_deg) * kDegToRad;
  const double raan = elements.raan_deg * kDegToRad;
  const double inc = elements.inclination_deg * kDegToRad;
  const double cos_raan = std::cos(raan);
  const double sin_raan = std::sin(raan);
  const double cos_inc = std::cos(inc);
  const double sin_inc = std::sin(inc);
  p_axis_ << cos_raan, sin_raan, 0.0;
  q_axis_ << -sin_raan * cos_inc, cos_raan * cos_inc, sin_inc;
}

Vector3<double> OrbitPropagator::position_after(double dt_s) const {
  const double a = elements_.semi_major_axis_km;
  const double e = elements_.eccentricity;
  if (e == 0.0) {
    const double u = phase0_ + mean_motion_ * dt_s;
    return a * (std::cos(u) * p_axis_ + std::sin(u) * q_axis_);
  }
  const double ecc_anomaly = solve_kepler(phase0_ + mean_motion_ * dt_s, e);
  const double cos_e = std::cos(ecc_anomaly);
  const double sin_e = std::sin(ecc_anomaly);
  const double radius = a * (1.0 - e * cos_e);
  const double true_anomaly = std::atan2(std::sqrt(1.0 - e * e) * sin_e, cos_e - e);
  const double u = arg_perigee_ + true_anomaly;
  return radius * (std::cos(u) * p_axis_ + std::sin(u) * q_axis_);
}

EciState propagate(const KeplerianElements& elements, double dt_s) {
  if (!(dt_s >= 0.0)) throw DomainError("propagation interval must be non-negative");
  return {OrbitPropagator(elements).position_after(dt_s), elements.epoch + dt_s};
}

KeplerianElements advance_epoch(const KeplerianElements& elements, double dt_s) {
  KeplerianElements out = elements;
  const double advance_deg = elements.mean_motion_rad_s() * dt_s * kRadToDeg;
  out.arg_latitude_deg = normalize_degrees(elements.arg_latitude_deg + advance_deg);
  out.epoch = elements.epoch + dt_s;
  return out;
}

}  // namespace leojam
