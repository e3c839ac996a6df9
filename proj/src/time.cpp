#include "leojam/time.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "leojam/errors.hpp"

namespace leojam {
namespace {

using std::chrono::days;
using std::chrono::sys_days;
using std::chrono::year_month_day;

constexpr double kJ2000OffsetFromUnixDay = 10957.5;  // 2000-01-01T12:00 in days since 1970-01-01

double days_since_unix_epoch(int year, unsigned month, unsigned day) {
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                           std::chrono::day{day}};
  if (!ymd.ok()) {
    throw ConfigError("invalid calendar date " + std::to_string(year) + "-" +
                      std::to_string(month) + "-" + std::to_string(day));
  }
  return static_cast<double>(sys_days{ymd}.time_since_epoch().count());
}

}  // namespace

UtcInstant UtcInstant::from_civil(int year, unsigned month, unsigned day, int hour,
                                  int minute, double second) {
  const double day_number = days_since_unix_epoch(year, month, day) - kJ2000OffsetFromUnixDay;
  return {day_number * 86400.0 + hour * 3600.0 + minute * 60.0 + second};
}

UtcInstant UtcInstant::parse_iso8601(std::string_view text) {
  int year = 0;
  unsigned month = 0;
  unsigned day = 0;
  int hour = 0;
  int minute = 0;
  double second = 0.0;
  char sep = 0;
  int consumed = 0;
  const std::string buf(text);
  const int n = std::sscanf(buf.c_str(), "%d-%u-%u%c%d:%d:%lf%n", &year, &month, &day, &sep,
                            &hour, &minute, &second, &consumed);
  if (n != 7 || (sep != 'T' && sep != ' ')) {
    throw ConfigError("unparsable UTC timestamp '" + buf + "'");
  }
  std::string_view rest = text.substr(static_cast<size_t>(consumed));
  if (!(rest.empty() || rest == "Z")) {
    throw ConfigError("unparsable UTC timestamp '" + buf + "' (only UTC 'Z' suffix allowed)");
  }
  if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0.0 || second >= 61.0) {
    throw ConfigError("time of day out of range in '" + buf + "'");
  }
  return from_civil(year, month, day, hour, minute, second);
}

UtcInstant UtcInstant::from_tle_epoch(int two_digit_year, double day_of_year) {
  const int year = two_digit_year < 57 ? 2000 + two_digit_year : 1900 + two_digit_year;
  const UtcInstant jan1 = from_civil(year, 1, 1);
  return jan1 + (day_of_year - 1.0) * 86400.0;
}

std::string UtcInstant::iso8601() const {
  // Round to whole milliseconds first so the civil fields never show 60 s.
  const double ms_total = std::round((seconds_since_j2000 + kJ2000OffsetFromUnixDay * 86400.0) * 1000.0);
  const auto ms = static_cast<long long>(ms_total);
  long long day_count = ms / 86400000LL;
  long long ms_of_day = ms % 86400000LL;
  if (ms_of_day < 0) {
    ms_of_day += 86400000LL;
    --day_count;
  }
  const year_month_day ymd{sys_days{days{day_count}}};
  const long long h = ms_of_day / 3600000LL;
  const long long m = (ms_of_day / 60000LL) % 60;
  const long long s = (ms_of_day / 1000LL) % 60;
  const long long frac = ms_of_day % 1000LL;
  char out[40];
  if (frac == 0) {
    std::snprintf(out, sizeof out, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), h, m, s);
  } else {
    std::snprintf(out, sizeof out, "%04d-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), h, m, s, frac);
  }
  return out;
}

}  // namespace leojam
