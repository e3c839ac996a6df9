#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace leojam {

/// A UTC instant held as seconds elapsed since J2000.0 (2000-01-01 12:00:00 UTC).
/// Leap seconds are ignored: UTC is treated as a uniform time scale, and UT1 = UTC.
struct UtcInstant {
  double seconds_since_j2000 = 0.0;

  friend auto operator<=>(const UtcInstant&, const UtcInstant&) = default;

  UtcInstant operator+(double dt_s) const { return {seconds_since_j2000 + dt_s}; }
  double operator-(const UtcInstant& other) const {
    return seconds_since_j2000 - other.seconds_since_j2000;
  }

  /// Julian centuries since J2000.0.
  double julian_centuries() const { return seconds_since_j2000 / (86400.0 * 36525.0); }

  static UtcInstant j2000() { return {}; }
  static UtcInstant from_civil(int year, unsigned month, unsigned day, int hour = 0,
                               int minute = 0, double second = 0.0);
  /// Accepts `YYYY-MM-DDTHH:MM:SS[.fff][Z]` (a space may replace the `T`).
  static UtcInstant parse_iso8601(std::string_view text);
  /// Two-digit-year TLE epoch field, `YYDDD.DDDDDDDD`.
  static UtcInstant from_tle_epoch(int two_digit_year, double day_of_year);

  /// `YYYY-MM-DDTHH:MM:SSZ`, with milliseconds appended when non-zero.
  std::string iso8601() const;
};

}  // namespace leojam
