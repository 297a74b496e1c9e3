#pragma once

#include <vector>

#include "zem/clock.hpp"

namespace zem {

struct GeoLocation {
  double latitude_deg = 37.34;     ///< north positive
  double longitude_deg = -121.88;  ///< east positive
  double utc_offset_h = -7.0;      ///< local clock minus UTC, DST included

  void validate() const;  ///< throws InputDomainError
  bool operator==(const GeoLocation&) const = default;
};

/// Inputs to the Bird clear-sky chain. Default-constructed values are the
/// usual spreadsheet defaults; see site_atmosphere() for the preset fitted
/// to the San Jose rooftop predictions.
struct AtmosphereParams {
  double surface_pressure_mb = 1013.0;
  double ozone_atm_cm = 0.3;
  double precipitable_water_cm = 1.5;
  double aod_500nm = 0.10;
  double aod_380nm = 0.15;
  double forward_scatter = 0.84;
  double ground_albedo = 0.2;

  void validate() const;
  bool operator==(const AtmosphereParams&) const = default;
};

/// Hazy-site atmosphere whose Bird predictions for the San Jose rooftop
/// window 08:44-16:24 give a ~439 W/m2 mean and ~582 W/m2 peak throughout
/// March 2008. Obtained by a minimax fit over every day of Mar 10-31.
AtmosphereParams site_atmosphere();

struct SolarInstant {
  double zenith_deg = 0.0;
  double earth_sun_distance_factor = 1.0;  ///< (r0/r)^2
  double local_solar_time_h = 12.0;
};

struct IrradianceSample {
  ClockTime timestamp;
  double direct_normal = 0.0;       ///< W/m2
  double diffuse_horizontal = 0.0;  ///< W/m2
  double global_horizontal = 0.0;   ///< W/m2
};

struct DayStats {
  ClockTime window_start;
  ClockTime window_end;
  double average_ghi = 0.0;
  double max_ghi = 0.0;
  ClockTime time_of_max;
};

struct DayProfile {
  std::vector<IrradianceSample> samples;
  DayStats stats;
};

/// Declination, equation of time and hour-angle geometry (Spencer series).
SolarInstant solar_position(const GeoLocation& location, const CivilDateTime& when);

/// Bird & Hulstrom clear-sky broadband model.
IrradianceSample bird_clear_sky(const SolarInstant& instant, const AtmosphereParams& atmosphere);

/// Samples bird_clear_sky at `start`, `start + step`, ... up to and including
/// `end`. Throws InputDomainError on an empty window or a step outside
/// [1, 3600] s.
DayProfile day_profile(const GeoLocation& location, CivilDate date,
                       const AtmosphereParams& atmosphere, ClockTime start, ClockTime end,
                       double step_s);

}  // namespace zem
