#include "zem/battery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zem/errors.hpp"
#include "zem/units.hpp"

namespace zem {

std::string_view to_string(Chemistry c) {
  return c == Chemistry::lead_acid ? "lead_acid" : "silicone";
}

Chemistry parse_chemistry(std::string_view text) {
  if (text == "lead_acid" || text == "lead-acid") return Chemistry::lead_acid;
  if (text == "silicone") return Chemistry::silicone;
  throw InputDomainError("unknown chemistry '" + std::string(text) +
                         "' (expected lead_acid or silicone)");
}

double calibrate_peukert(double rated_ah, double rated_current, double measured_ah,
                         double measured_current) {
  if (!(rated_ah > 0.0 && rated_current > 0.0 && measured_ah > 0.0 && measured_current > 0.0))
    throw InputDomainError("Peukert calibration inputs must be positive");
  if (measured_current == rated_current) {
    if (measured_ah != rated_ah)
      throw CalibrationError("different capacities at the same current cannot be calibrated");
    return 1.0;
  }
  const double k =
      1.0 + std::log(measured_ah / rated_ah) / std::log(rated_current / measured_current);
  if (k < 1.0)
    throw CalibrationError("calibration implies a Peukert exponent below 1 (capacity rising with current)");
  return k;
}

void BatterySpec::validate() const {
  if (!(v_nominal > 0.0)) throw InputDomainError("battery nominal voltage must be positive");
  if (!(rated_ah > 0.0)) throw InputDomainError("battery rated capacity must be positive");
  if (!(rated_current > 0.0)) throw InputDomainError("battery rated current must be positive");
  if (!(peukert_k >= 1.0 && peukert_k <= 2.0))
    throw InputDomainError("Peukert exponent must lie in [1, 2]");
  if (!(min_soc >= 0.0 && min_soc < 1.0)) throw InputDomainError("min_soc must lie in [0, 1)");
  if (!(charge_efficiency > 0.0 && charge_efficiency <= 1.0))
    throw InputDomainError("charge efficiency must lie in (0, 1]");
  if (mass_kg && !(*mass_kg > 0.0)) throw InputDomainError("battery mass must be positive");
}

BatterySpec lead_acid_reference() {
  BatterySpec s;
  s.chemistry = Chemistry::lead_acid;
  s.v_nominal = 12.0;
  s.rated_ah = 35.0;
  s.rated_current = 1.75;
  s.peukert_k = calibrate_peukert(35.0, 1.75, 21.0, 12.0);
  s.mass_kg = 10.77;
  return s;
}

BatterySpec silicone_reference() {
  BatterySpec s;
  s.chemistry = Chemistry::silicone;
  s.v_nominal = 12.0;
  s.rated_ah = 70.0;
  s.rated_current = 70.0 / 20.0;
  s.peukert_k = calibrate_peukert(70.0, 3.5, 43.8, 12.0);
  s.mass_kg = 14.68;
  return s;
}

BatteryState fresh_state(const BatterySpec& spec, double soc) {
  if (!(soc >= 0.0 && soc <= 1.0)) throw InputDomainError("state of charge must lie in [0, 1]");
  return {soc, 0.0, 0.0, 0.0, spec.v_nominal};
}

double effective_ah(const BatterySpec& spec, double current) {
  if (!(current > 0.0)) throw InputDomainError("discharge current must be positive");
  return spec.rated_ah * std::pow(spec.rated_current / current, spec.peukert_k - 1.0);
}

double full_range_ah(const BatterySpec& spec, double current) {
  return effective_ah(spec, current) / (1.0 - spec.min_soc);
}

BatteryState discharge_step(const BatteryState& state, const BatterySpec& spec, double current,
                            double dt_s) {
  if (!(current >= 0.0)) throw InputDomainError("discharge current must be nonnegative");
  if (!(dt_s > 0.0)) throw InputDomainError("time step must be positive");
  if (current == 0.0 || state.soc <= 0.0) return state;

  const double hours = dt_s / kSecondsPerHour;
  const double drop = current * hours / full_range_ah(spec, current);
  // Past empty the battery delivers only what was left in it.
  const double delivered_fraction = drop > state.soc ? state.soc / drop : 1.0;

  BatteryState next = state;
  next.soc = drop > state.soc ? 0.0 : state.soc - drop;
  const double ah = current * hours * delivered_fraction;
  next.delivered_ah += ah;
  next.delivered_wh += ah * spec.v_nominal;
  next.terminal_voltage = spec.v_nominal;
  return next;
}

BatteryState charge_step(const BatteryState& state, const BatterySpec& spec, double power_w,
                         double dt_s) {
  if (!(power_w >= 0.0)) throw InputDomainError("charge power must be nonnegative");
  if (!(dt_s > 0.0)) throw InputDomainError("time step must be positive");
  if (power_w == 0.0 || state.soc >= 1.0) return state;

  const double hours = dt_s / kSecondsPerHour;
  const double capacity = full_range_ah(spec, spec.rated_current);
  const double ah = power_w * spec.charge_efficiency / spec.v_nominal * hours;
  const double room = (1.0 - state.soc) * capacity;
  BatteryState next = state;
  if (ah >= room) {
    next.soc = 1.0;
    next.accepted_wh += power_w * hours * (room / ah);
  } else {
    next.soc = state.soc + ah / capacity;
    next.accepted_wh += power_w * hours;
  }
  next.terminal_voltage = spec.v_nominal;
  return next;
}

double current_to_floor(const BatteryState& state, const BatterySpec& spec, double floor_soc,
                        double dt_s) {
  if (!(dt_s > 0.0)) throw InputDomainError("time step must be positive");
  const double margin = state.soc - floor_soc;
  if (!(margin > 0.0)) return 0.0;
  // drop(I) = I^k * h / A with A = rated_ah * I_rated^(k-1) / (1 - min_soc)
  const double k = spec.peukert_k;
  const double a = spec.rated_ah * std::pow(spec.rated_current, k - 1.0) / (1.0 - spec.min_soc);
  return std::pow(margin * a / (dt_s / kSecondsPerHour), 1.0 / k);
}

double charge_headroom_w(const BatteryState& state, const BatterySpec& spec, double dt_s) {
  if (!(dt_s > 0.0)) throw InputDomainError("time step must be positive");
  if (state.soc >= 1.0 || spec.charge_efficiency <= 0.0) return 0.0;
  const double room = (1.0 - state.soc) * full_range_ah(spec, spec.rated_current);
  return room * spec.v_nominal / spec.charge_efficiency / (dt_s / kSecondsPerHour);
}

double energy_density(double delivered_wh, double mass_kg) {
  if (!(mass_kg > 0.0)) throw InputDomainError("battery mass must be positive");
  return delivered_wh / mass_kg;
}

BankAggregate bank_aggregate(const BankConfig& config) {
  if (config.series_count < 1 || config.parallel_count < 1)
    throw InputDomainError("bank series and parallel counts must be at least 1");
  if (config.total_count && *config.total_count != config.series_count * config.parallel_count)
    throw ConfigError("bank of " + std::to_string(*config.total_count) + " batteries cannot be wired " +
                      std::to_string(config.series_count) + "s" +
                      std::to_string(config.parallel_count) + "p");
  BankAggregate agg;
  agg.voltage = config.series_count * config.battery.v_nominal;
  agg.capacity_ah = config.parallel_count * config.battery.rated_ah;
  agg.energy_wh = agg.voltage * agg.capacity_ah;
  return agg;
}

BatterySpec bank_equivalent(const BankConfig& config) {
  const BankAggregate agg = bank_aggregate(config);
  BatterySpec eq = config.battery;
  eq.v_nominal = agg.voltage;
  eq.rated_ah = agg.capacity_ah;
  eq.rated_current = config.parallel_count * config.battery.rated_current;
  if (config.battery.mass_kg)
    eq.mass_kg = *config.battery.mass_kg * config.series_count * config.parallel_count;
  return eq;
}

}  // namespace zem
