#ifndef OPMINE_TIME_HPP
#define OPMINE_TIME_HPP

#include <array>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "opmine/error.hpp"

namespace opmine {

// Twitter timestamp handling ("Tue Oct 01 16:58:48 +0000 2019").
// Timestamps are carried as UTC epoch seconds; formatting recomputes the
// weekday, so parse->format round-trips any well-formed +0000 source string.

namespace detail_time {

inline constexpr std::array<std::string_view, 12> kMonths = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

inline constexpr std::array<std::string_view, 7> kWeekdays = {
    "Thu", "Fri", "Sat", "Sun", "Mon", "Tue", "Wed"};  // epoch day 0 = Thu

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

inline bool parse_fixed_int(std::string_view s, std::size_t pos, int n, int& out) {
  out = 0;
  for (int k = 0; k < n; ++k) {
    if (pos + k >= s.size()) return false;
    char c = s[pos + k];
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  return true;
}

}  // namespace detail_time

// Parses "EEE MMM dd HH:mm:ss +ZZZZ yyyy" into UTC epoch seconds. The zone
// offset is applied (Twitter always emits +0000). Throws Error("BadTimestamp").
inline std::int64_t parse_twitter_time(std::string_view s) {
  using namespace detail_time;
  const auto bad = [&]() -> std::int64_t {
    throw Error("BadTimestamp", "cannot parse '" + std::string(s) + "'");
  };
  // "Tue Oct 01 16:58:48 +0000 2019" -- 30 chars, fixed layout.
  if (s.size() != 30) return bad();
  bool weekday_ok = false;
  for (auto w : kWeekdays) weekday_ok |= (s.substr(0, 3) == w);
  if (!weekday_ok || s[3] != ' ') return bad();
  int month = 0;
  for (int k = 0; k < 12; ++k)
    if (s.substr(4, 3) == kMonths[static_cast<std::size_t>(k)]) month = k + 1;
  if (month == 0 || s[7] != ' ') return bad();
  int day, hour, minute, second, offhh, offmm, year;
  if (!parse_fixed_int(s, 8, 2, day) || s[10] != ' ') return bad();
  if (!parse_fixed_int(s, 11, 2, hour) || s[13] != ':') return bad();
  if (!parse_fixed_int(s, 14, 2, minute) || s[16] != ':') return bad();
  if (!parse_fixed_int(s, 17, 2, second) || s[19] != ' ') return bad();
  char sign = s[20];
  if (sign != '+' && sign != '-') return bad();
  if (!parse_fixed_int(s, 21, 2, offhh) || !parse_fixed_int(s, 23, 2, offmm) ||
      s[25] != ' ')
    return bad();
  if (!parse_fixed_int(s, 26, 4, year)) return bad();
  if (month < 1 || month > 12 || hour > 23 || minute > 59 || second > 60)
    return bad();
  static constexpr int kDaysInMonth[12] = {31, 28, 31, 30, 31, 30,
                                           31, 31, 30, 31, 30, 31};
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  const int dim = kDaysInMonth[month - 1] + (month == 2 && leap ? 1 : 0);
  if (day < 1 || day > dim) return bad();
  std::int64_t t = days_from_civil(year, month, day) * 86400 + hour * 3600 +
                   minute * 60 + second;
  std::int64_t off = (offhh * 3600 + offmm * 60) * (sign == '-' ? -1 : 1);
  return t - off;
}

// Formats UTC epoch seconds back into the Twitter layout with a +0000 zone.
inline std::string format_twitter_time(std::int64_t t) {
  using namespace detail_time;
  std::int64_t days = t / 86400;
  std::int64_t secs = t % 86400;
  if (secs < 0) {
    secs += 86400;
    days -= 1;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  std::string_view wd = kWeekdays[static_cast<std::size_t>(((days % 7) + 7) % 7)];
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3s %.3s %02d %02d:%02d:%02d +0000 %04d",
                wd.data(), kMonths[static_cast<std::size_t>(m - 1)].data(), d,
                static_cast<int>(secs / 3600), static_cast<int>((secs % 3600) / 60),
                static_cast<int>(secs % 60), y);
  return std::string(buf);
}

// Floors a UTC instant to the hour boundary of the zone at `utc_offset_seconds`
// and returns that boundary as a UTC instant.
inline std::int64_t floor_to_local_hour(std::int64_t utc, std::int64_t utc_offset_seconds) {
  std::int64_t local = utc + utc_offset_seconds;
  std::int64_t floored = local - (((local % 3600) + 3600) % 3600);
  return floored - utc_offset_seconds;
}

// "2019-10-01 10:00" label for a bucket start, rendered in the given zone.
inline std::string format_local_hour(std::int64_t utc, std::int64_t utc_offset_seconds) {
  using namespace detail_time;
  std::int64_t local = utc + utc_offset_seconds;
  std::int64_t days = local / 86400;
  std::int64_t secs = local % 86400;
  if (secs < 0) {
    secs += 86400;
    days -= 1;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:00", y, m, d,
                static_cast<int>(secs / 3600));
  return std::string(buf);
}

}  // namespace opmine

#endif  // OPMINE_TIME_HPP
