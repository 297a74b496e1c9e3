#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "zem/errors.hpp"
#include "zem/solar.hpp"

using namespace zem;

namespace {

AtmosphereParams to_params(const oracle::Sky& k) {
  return {k.pressure, k.ozone, k.water, k.aod500, k.aod380, k.ba, k.albedo};
}

CivilDateTime at(int y, int m, int d, int hh, int mm) {
  return {CivilDate{std::chrono::year{y}, std::chrono::month(m), std::chrono::day(d)},
          ClockTime::hms(hh, mm)};
}

const CivilDate kMarch15{std::chrono::year{2008}, std::chrono::month{3}, std::chrono::day{15}};

}  // namespace

TEST_SUITE("solar") {
  TEST_CASE("equator at equinox noon has the sun overhead") {
    // Local solar noon: pick the clock time where solar time is 12.
    const GeoLocation eq{0.0, 0.0, 0.0};
    double best = 180.0;
    for (int m = 0; m < 60; ++m) {
      const SolarInstant s = solar_position(eq, at(2008, 3, 20, 12, m));
      best = std::min(best, s.zenith_deg);
    }
    CHECK(best < 1.0);
  }

  TEST_CASE("sun is below the horizon at local midnight") {
    const GeoLocation sj;
    CHECK(solar_position(sj, at(2008, 3, 15, 0, 50)).zenith_deg > 90.0);
    CHECK(solar_position({-33.9, 151.2, 10.0}, at(2008, 6, 1, 0, 0)).zenith_deg > 90.0);
  }

  TEST_CASE("San Jose minimum zenith near 13:19 local") {
    const GeoLocation sj;
    double best = 180.0;
    int best_min = 0;
    for (int m = 11 * 60; m < 15 * 60; ++m) {
      const double z = solar_position(sj, {kMarch15, ClockTime{m * 60.0}}).zenith_deg;
      if (z < best) {
        best = z;
        best_min = m;
      }
    }
    CHECK(std::abs(best_min - (13 * 60 + 19)) <= 20);
  }

  TEST_CASE("position matches the oracle") {
    const GeoLocation sj;
    const SolarInstant s = solar_position(sj, {kMarch15, ClockTime::hms(13, 19)});
    // frozen from an independent script
    CHECK(s.zenith_deg == doctest::Approx(39.38507476884963).epsilon(1e-12));
    CHECK(s.earth_sun_distance_factor == doctest::Approx(1.0107942593442738).epsilon(1e-12));
    for (int doy_month = 1; doy_month <= 12; ++doy_month) {
      for (int h = 0; h < 24; h += 3) {
        const auto when = at(2008, doy_month, 11, h, 17);
        const SolarInstant got = solar_position(sj, when);
        const oracle::Sun want = oracle::sun_at(37.34, -121.88, -7.0,
                                                oracle::day_number(2008, doy_month, 11), h + 17 / 60.0);
        CHECK(got.zenith_deg == doctest::Approx(want.zenith_deg).epsilon(1e-9));
        CHECK(got.earth_sun_distance_factor == doctest::Approx(want.esd).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("position domain errors") {
    CHECK_THROWS_AS(solar_position({91.0, 0.0, 0.0}, at(2008, 3, 15, 12, 0)), InputDomainError);
    CHECK_THROWS_AS(solar_position({0.0, -181.0, 0.0}, at(2008, 3, 15, 12, 0)), InputDomainError);
  }

  TEST_CASE("Bird below horizon is dark") {
    const IrradianceSample s = bird_clear_sky({95.0, 1.0, 0.0}, AtmosphereParams{});
    CHECK(s.direct_normal == 0.0);
    CHECK(s.diffuse_horizontal == 0.0);
    CHECK(s.global_horizontal == 0.0);
  }

  TEST_CASE("Bird overhead sun, spreadsheet defaults") {
    const IrradianceSample s = bird_clear_sky({0.0, 1.0, 12.0}, AtmosphereParams{});
    CHECK(s.global_horizontal >= 900.0);
    CHECK(s.global_horizontal <= 1100.0);
    CHECK(s.global_horizontal == doctest::Approx(1076.0746823257532).epsilon(1e-12));
    CHECK(s.direct_normal == doctest::Approx(952.7618028764173).epsilon(1e-12));
    CHECK(s.diffuse_horizontal == doctest::Approx(123.31287944933592).epsilon(1e-10));
  }

  TEST_CASE("Bird frozen values") {
    const IrradianceSample a = bird_clear_sky({0.0, 1.0, 12.0}, site_atmosphere());
    CHECK(a.global_horizontal == doctest::Approx(774.0238168593642).epsilon(1e-12));
    const IrradianceSample b = bird_clear_sky({60.0, 1.01, 12.0}, AtmosphereParams{});
    CHECK(b.global_horizontal == doctest::Approx(496.1520330024035).epsilon(1e-12));
    CHECK(b.direct_normal == doctest::Approx(798.5007492698725).epsilon(1e-12));
  }

  TEST_CASE("Bird matches the oracle over zenith and atmospheres") {
    for (const oracle::Sky& sky : {oracle::Sky{}, oracle::site_sky(),
                                   oracle::Sky{850.0, 0.35, 0.5, 0.05, 0.08, 0.9, 0.3}}) {
      for (double z = 0.0; z < 90.0; z += 2.5) {
        const IrradianceSample got = bird_clear_sky({z, 0.99, 12.0}, to_params(sky));
        const oracle::Flux want = oracle::bird({z, 0.99}, sky);
        CHECK(got.global_horizontal == doctest::Approx(want.ghi).epsilon(1e-10));
        CHECK(got.direct_normal == doctest::Approx(want.dni).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("San Jose 13:19 global irradiance near 582") {
    const GeoLocation sj;
    const IrradianceSample s = bird_clear_sky(
        solar_position(sj, {kMarch15, ClockTime::hms(13, 19)}), site_atmosphere());
    CHECK(s.global_horizontal == doctest::Approx(549.7678909871676).epsilon(1e-10));
    CHECK(std::abs(s.global_horizontal / 582.0 - 1.0) <= 0.10);
  }

  TEST_CASE("day profile over the measurement window") {
    const DayProfile p = day_profile(GeoLocation{}, kMarch15, site_atmosphere(),
                                     ClockTime::hms(8, 44), ClockTime::hms(16, 24), 60.0);
    CHECK(p.samples.size() == 461);
    CHECK(p.stats.average_ghi == doctest::Approx(420.34660151156095).epsilon(1e-10));
    CHECK(p.stats.max_ghi == doctest::Approx(549.8018028226323).epsilon(1e-10));
    CHECK(p.stats.time_of_max == ClockTime::hms(13, 17));
    CHECK(std::abs(p.stats.average_ghi / 439.0 - 1.0) <= 0.10);
    CHECK(std::abs(p.stats.max_ghi / 582.0 - 1.0) <= 0.10);
  }

  TEST_CASE("night window is dark") {
    const DayProfile p = day_profile(GeoLocation{}, kMarch15, AtmosphereParams{},
                                     ClockTime::hms(0, 0), ClockTime::hms(4, 0), 300.0);
    CHECK(p.stats.average_ghi == 0.0);
    CHECK(p.stats.max_ghi == 0.0);
  }

  TEST_CASE("day profile errors") {
    const auto t = ClockTime::hms(10, 0);
    CHECK_THROWS_AS(day_profile(GeoLocation{}, kMarch15, {}, t, t, 60.0), InputDomainError);
    CHECK_THROWS_AS(day_profile(GeoLocation{}, kMarch15, {}, t + 60, t, 60.0), InputDomainError);
    CHECK_THROWS_AS(day_profile(GeoLocation{}, kMarch15, {}, t, t + 600, 0.5), InputDomainError);
  }
}
