#include "zem/solar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zem/errors.hpp"
#include "zem/units.hpp"

namespace zem {

void GeoLocation::validate() const {
  if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0))
    throw InputDomainError("latitude must lie in [-90, 90] degrees");
  if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0))
    throw InputDomainError("longitude must lie in [-180, 180] degrees");
  if (!(utc_offset_h >= -12.0 && utc_offset_h <= 14.0))
    throw InputDomainError("utc offset must lie in [-12, 14] hours");
}

void AtmosphereParams::validate() const {
  const double nonneg[] = {surface_pressure_mb, ozone_atm_cm, precipitable_water_cm, aod_500nm,
                           aod_380nm};
  for (double v : nonneg) {
    if (!(v >= 0.0)) throw InputDomainError("atmosphere parameters must be nonnegative");
  }
  if (!(forward_scatter >= 0.0 && forward_scatter <= 1.0))
    throw InputDomainError("forward scatter fraction must lie in [0, 1]");
  if (!(ground_albedo >= 0.0 && ground_albedo <= 1.0))
    throw InputDomainError("ground albedo must lie in [0, 1]");
}

AtmosphereParams site_atmosphere() {
  AtmosphereParams a;
  a.surface_pressure_mb = 1013.0;
  a.ozone_atm_cm = 0.3;
  a.precipitable_water_cm = 3.3;
  a.aod_500nm = 0.82;
  a.aod_380nm = 1.23;
  a.forward_scatter = 0.32;
  a.ground_albedo = 0.2;
  return a;
}

SolarInstant solar_position(const GeoLocation& location, const CivilDateTime& when) {
  location.validate();
  const int year = static_cast<int>(when.date.year());
  if (!when.date.ok() || year < 1950 || year > 2100)
    throw InputDomainError("date must be a valid day in 1950-2100");

  // Spencer (1971) Fourier series in the day angle.
  const double g = 2.0 * std::numbers::pi * (day_of_year(when.date) - 1) / 365.0;
  const double declination = 0.006918 - 0.399912 * std::cos(g) + 0.070257 * std::sin(g) -
                             0.006758 * std::cos(2 * g) + 0.000907 * std::sin(2 * g) -
                             0.002697 * std::cos(3 * g) + 0.00148 * std::sin(3 * g);
  const double eot_min = 229.18 * (0.000075 + 0.001868 * std::cos(g) - 0.032077 * std::sin(g) -
                                   0.014615 * std::cos(2 * g) - 0.040849 * std::sin(2 * g));
  const double distance = 1.00011 + 0.034221 * std::cos(g) + 0.00128 * std::sin(g) +
                          0.000719 * std::cos(2 * g) + 0.000077 * std::sin(2 * g);

  const double solar_time =
      when.time.hours() +
      (eot_min + 4.0 * location.longitude_deg - 60.0 * location.utc_offset_h) / 60.0;
  const double hour_angle = deg_to_rad(15.0 * (solar_time - 12.0));
  const double lat = deg_to_rad(location.latitude_deg);
  const double cos_zenith = std::sin(lat) * std::sin(declination) +
                            std::cos(lat) * std::cos(declination) * std::cos(hour_angle);

  SolarInstant out;
  out.zenith_deg = rad_to_deg(std::acos(std::clamp(cos_zenith, -1.0, 1.0)));
  out.earth_sun_distance_factor = distance;
  out.local_solar_time_h = solar_time;
  return out;
}

IrradianceSample bird_clear_sky(const SolarInstant& instant, const AtmosphereParams& atm) {
  atm.validate();
  if (!(instant.zenith_deg >= 0.0 && instant.zenith_deg <= 180.0))
    throw InputDomainError("zenith angle must lie in [0, 180] degrees");
  if (!(instant.earth_sun_distance_factor >= 0.96 && instant.earth_sun_distance_factor <= 1.04))
    throw InputDomainError("earth-sun distance factor must lie in [0.96, 1.04]");

  IrradianceSample out;
  if (instant.zenith_deg >= 90.0) return out;

  constexpr double kSolarConstant = 1367.0;
  const double z = instant.zenith_deg;
  const double cz = std::cos(deg_to_rad(z));
  const double air_mass = 1.0 / (cz + 0.15 * std::pow(93.885 - z, -1.25));
  const double pressure_mass = air_mass * atm.surface_pressure_mb / 1013.0;

  const double t_rayleigh = std::exp(-0.0903 * std::pow(pressure_mass, 0.84) *
                                     (1.0 + pressure_mass - std::pow(pressure_mass, 1.01)));
  const double xo = atm.ozone_atm_cm * air_mass;
  const double t_ozone = 1.0 - 0.1611 * xo * std::pow(1.0 + 139.48 * xo, -0.3035) -
                         0.002715 * xo / (1.0 + 0.044 * xo + 0.0003 * xo * xo);
  const double t_gases = std::exp(-0.0127 * std::pow(pressure_mass, 0.26));
  const double xw = atm.precipitable_water_cm * air_mass;
  const double t_water = 1.0 - 2.4959 * xw / (std::pow(1.0 + 79.034 * xw, 0.6828) + 6.385 * xw);
  const double tau = 0.2758 * atm.aod_380nm + 0.35 * atm.aod_500nm;
  const double t_aerosol =
      std::exp(-std::pow(tau, 0.873) * (1.0 + tau - std::pow(tau, 0.7088)) *
               std::pow(air_mass, 0.9108));
  const double t_absorb =
      1.0 - 0.1 * (1.0 - air_mass + std::pow(air_mass, 1.06)) * (1.0 - t_aerosol);
  const double t_scatter = t_aerosol / t_absorb;
  const double sky_albedo = 0.0685 + (1.0 - atm.forward_scatter) * (1.0 - t_scatter);

  const double extra = kSolarConstant * instant.earth_sun_distance_factor;
  const double direct = extra * 0.9662 * t_rayleigh * t_ozone * t_gases * t_water * t_aerosol;
  const double beam_h = direct * cz;
  const double scattered = extra * cz * 0.79 * t_ozone * t_gases * t_water * t_absorb *
                           (0.5 * (1.0 - t_rayleigh) + atm.forward_scatter * (1.0 - t_scatter)) /
                           (1.0 - air_mass + std::pow(air_mass, 1.02));
  const double global = (beam_h + scattered) / (1.0 - atm.ground_albedo * sky_albedo);

  out.direct_normal = std::max(direct, 0.0);
  out.global_horizontal = std::max(global, 0.0);
  out.diffuse_horizontal = std::max(global - beam_h, 0.0);
  return out;
}

DayProfile day_profile(const GeoLocation& location, CivilDate date,
                       const AtmosphereParams& atmosphere, ClockTime start, ClockTime end,
                       double step_s) {
  if (!(step_s >= 1.0 && step_s <= 3600.0))
    throw InputDomainError("profile step must lie in [1, 3600] s");
  if (!(end > start)) throw InputDomainError("profile window is empty");
  if (start.seconds < 0.0 || end.seconds > 86400.0)
    throw InputDomainError("profile window must lie within the day");
  location.validate();
  atmosphere.validate();

  DayProfile profile;
  const auto count = static_cast<std::size_t>(std::floor((end.seconds - start.seconds) / step_s + 1e-9)) + 1;
  profile.samples.reserve(count);
  double sum = 0.0;
  DayStats& stats = profile.stats;
  stats.window_start = start;
  stats.window_end = end;
  stats.time_of_max = start;
  for (std::size_t i = 0; i < count; ++i) {
    const ClockTime t = start + static_cast<double>(i) * step_s;
    IrradianceSample sample = bird_clear_sky(solar_position(location, {date, t}), atmosphere);
    sample.timestamp = t;
    sum += sample.global_horizontal;
    if (sample.global_horizontal > stats.max_ghi) {
      stats.max_ghi = sample.global_horizontal;
      stats.time_of_max = t;
    }
    profile.samples.push_back(sample);
  }
  stats.average_ghi = sum / static_cast<double>(count);
  return profile;
}

}  // namespace zem
