#include "zem/clock.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "zem/errors.hpp"

namespace zem {
namespace {

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

ClockTime parse_clock(std::string_view text) {
  auto bad = [&] { return InputDomainError("invalid clock time '" + std::string(text) + "'"); };
  const auto first = text.find(':');
  if (first == std::string_view::npos) throw bad();
  const auto second = text.find(':', first + 1);
  int h = 0;
  int m = 0;
  int s = 0;
  if (!parse_int(text.substr(0, first), h)) throw bad();
  if (second == std::string_view::npos) {
    if (!parse_int(text.substr(first + 1), m)) throw bad();
  } else {
    if (!parse_int(text.substr(first + 1, second - first - 1), m)) throw bad();
    if (!parse_int(text.substr(second + 1), s)) throw bad();
  }
  if (h < 0 || h > 24 || m < 0 || m > 59 || s < 0 || s > 59 || (h == 24 && (m || s))) throw bad();
  return ClockTime::hms(h, m, s);
}

std::string format_clock(ClockTime t) {
  const long total = std::lround(t.seconds);
  const long h = total / 3600;
  const long m = (total / 60) % 60;
  const long s = total % 60;
  char buf[32];
  if (s == 0) {
    std::snprintf(buf, sizeof buf, "%02ld:%02ld", h, m);
  } else {
    std::snprintf(buf, sizeof buf, "%02ld:%02ld:%02ld", h, m, s);
  }
  return buf;
}

CivilDate parse_date(std::string_view text) {
  auto bad = [&] { return InputDomainError("invalid date '" + std::string(text) + "'"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  int y = 0;
  int m = 0;
  int d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    throw bad();
  }
  CivilDate date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                 std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) throw bad();
  return date;
}

std::string format_date(CivilDate d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

int day_of_year(CivilDate d) {
  using namespace std::chrono;
  const sys_days jan1{d.year() / January / 1};
  return static_cast<int>((sys_days{d} - jan1).count()) + 1;
}

}  // namespace zem
