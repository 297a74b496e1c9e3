#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace zem {

/// Local wall-clock time of day, held as seconds since midnight.
struct ClockTime {
  double seconds = 0.0;

  static ClockTime hms(int h, int m, double s = 0.0) { return {h * 3600.0 + m * 60.0 + s}; }
  double hours() const { return seconds / 3600.0; }
  ClockTime operator+(double dt) const { return {seconds + dt}; }
  auto operator<=>(const ClockTime&) const = default;
};

/// Parses "HH:MM" or "HH:MM:SS". Throws InputDomainError.
ClockTime parse_clock(std::string_view text);
/// "HH:MM" when the time falls on a whole minute, "HH:MM:SS" otherwise.
std::string format_clock(ClockTime t);

using CivilDate = std::chrono::year_month_day;

/// Parses "YYYY-MM-DD". Throws InputDomainError.
CivilDate parse_date(std::string_view text);
std::string format_date(CivilDate d);
int day_of_year(CivilDate d);

struct CivilDateTime {
  CivilDate date;
  ClockTime time;
};

}  // namespace zem
