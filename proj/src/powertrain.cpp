#include "zem/powertrain.hpp"

#include <algorithm>
#include <cmath>

#include "zem/errors.hpp"

namespace zem {

void MotorSpec::validate() const {
  if (!(supply_voltage > 0.0 && max_power_w > 0.0 && current_limit_a > 0.0 &&
        armature_resistance > 0.0 && series_field_constant > 0.0 && speed_constant > 0.0))
    throw InputDomainError("motor parameters must be positive");
  if (series_field_constant > speed_constant)
    throw InputDomainError("motor torque constant may not exceed its back-emf constant");
}

double pot_to_duty(double resistance_ohm) {
  if (!(resistance_ohm >= 0.0 && resistance_ohm <= kPotentiometerMaxOhm))
    throw InputDomainError("potentiometer resistance must lie in [0, 5000] ohm");
  return resistance_ohm / kPotentiometerMaxOhm;
}

MotorOutput motor_step(double duty, double shaft_speed, const MotorSpec& spec) {
  if (!(duty >= 0.0 && duty <= 1.0)) throw InputDomainError("duty must lie in [0, 1]");
  if (!(shaft_speed >= 0.0)) throw InputDomainError("shaft speed must be nonnegative");

  MotorOutput out;
  const double commanded_voltage = duty * spec.supply_voltage;
  if (commanded_voltage == 0.0) return out;

  const double impedance = spec.armature_resistance + spec.speed_constant * shaft_speed;
  double current = std::min(commanded_voltage / impedance, spec.current_limit_a);
  if (spec.series_field_constant * current * current * shaft_speed > spec.max_power_w) {
    current = std::sqrt(spec.max_power_w / (spec.series_field_constant * shaft_speed));
    // keep the rounded product on the safe side of the rating
    while (spec.series_field_constant * current * current * shaft_speed > spec.max_power_w)
      current = std::nextafter(current, 0.0);
  }

  out.current = current;
  out.torque = spec.series_field_constant * current * current;
  out.effective_voltage = current * impedance;
  out.electrical_power = out.effective_voltage * current;
  out.mechanical_power = out.torque * shaft_speed;
  return out;
}

double duty_for_power(double power_w, double shaft_speed, const MotorSpec& spec) {
  if (!(power_w > 0.0)) return 0.0;
  const double impedance = spec.armature_resistance + spec.speed_constant * shaft_speed;
  return std::min(1.0, std::sqrt(power_w * impedance) / spec.supply_voltage);
}

void SprocketSet::validate() const {
  if (!(pedal_ratio > 0.0 && motor_ratio > 0.0 && wheel_radius_m > 0.0))
    throw InputDomainError("sprocket ratios and wheel radius must be positive");
}

ClutchState clutch_resolve(double pedal_cadence, double rider_torque, double axle_speed,
                           const SprocketSet& sprockets) {
  if (!(pedal_cadence >= 0.0 && axle_speed >= 0.0))
    throw InputDomainError("clutch speeds must be nonnegative");
  if (!(rider_torque >= 0.0)) throw InputDomainError("rider torque must be nonnegative");
  ClutchState state;
  state.engaged = pedal_cadence >= axle_speed * sprockets.pedal_ratio;
  state.transmitted_torque = state.engaged ? rider_torque * sprockets.pedal_ratio : 0.0;
  return state;
}

double wheel_force(double axle_torque_total, const SprocketSet& sprockets) {
  if (!(sprockets.wheel_radius_m > 0.0)) throw InputDomainError("wheel radius must be positive");
  return axle_torque_total / sprockets.wheel_radius_m;
}

void RiderModel::validate() const {
  if (!(min_cadence > 0.0 && max_cadence >= min_cadence && max_torque > 0.0))
    throw InputDomainError("rider cadence range and torque limit must be positive");
}

PedalEffort rider_effort(double pedal_power_w, double axle_speed, const SprocketSet& sprockets,
                         const RiderModel& rider) {
  if (!(pedal_power_w > 0.0)) return {};
  PedalEffort effort;
  effort.cadence = std::clamp(axle_speed * sprockets.pedal_ratio, rider.min_cadence, rider.max_cadence);
  effort.torque = std::min(pedal_power_w / effort.cadence, rider.max_torque);
  return effort;
}

}  // namespace zem
