#include "doctest.h"
#include "zem/clock.hpp"
#include "zem/errors.hpp"
#include "zem/units.hpp"

using namespace zem;

TEST_SUITE("clock") {
  TEST_CASE("clock parsing and formatting") {
    CHECK(parse_clock("08:44").seconds == doctest::Approx(8 * 3600 + 44 * 60));
    CHECK(parse_clock("13:19:30").seconds == doctest::Approx(13 * 3600 + 19 * 60 + 30));
    CHECK(format_clock(ClockTime::hms(16, 24)) == "16:24");
    CHECK(format_clock(ClockTime::hms(9, 5, 7)) == "09:05:07");
    CHECK(format_clock(parse_clock("00:00")) == "00:00");
    CHECK_THROWS_AS(parse_clock("25:00"), InputDomainError);
    CHECK_THROWS_AS(parse_clock("12:60"), InputDomainError);
    CHECK_THROWS_AS(parse_clock("noon"), InputDomainError);
    CHECK_THROWS_AS(parse_clock(""), InputDomainError);
  }

  TEST_CASE("dates") {
    const CivilDate d = parse_date("2008-03-15");
    CHECK(format_date(d) == "2008-03-15");
    CHECK(day_of_year(d) == 75);  // 2008 is a leap year
    CHECK(day_of_year(parse_date("2007-03-15")) == 74);
    CHECK(day_of_year(parse_date("2008-01-01")) == 1);
    CHECK(day_of_year(parse_date("2008-12-31")) == 366);
    CHECK_THROWS_AS(parse_date("2008-02-30"), InputDomainError);
    CHECK_THROWS_AS(parse_date("2008/03/15"), InputDomainError);
  }

  TEST_CASE("rounding is half away from zero") {
    CHECK(round_half_away(2.5) == 3.0);
    CHECK(round_half_away(-2.5) == -3.0);
    CHECK(round_half_away(2.4999) == 2.0);
    CHECK(round_half_away(265 * 0.7) == 186.0);  // product is not exact in binary
    CHECK(round_half_away(0.0) == 0.0);
  }

  TEST_CASE("unit conversions") {
    CHECK(mph_to_mps(5.0) == doctest::Approx(2.2352));
    CHECK(mps_to_mph(mph_to_mps(7.0)) == doctest::Approx(7.0));
    CHECK(rad_to_deg(deg_to_rad(37.34)) == doctest::Approx(37.34));
  }
}
