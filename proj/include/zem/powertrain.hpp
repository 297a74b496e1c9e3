#pragma once

namespace zem {

struct MotorSpec {
  double supply_voltage = 48.0;
  double max_power_w = 7457.0;  ///< 10 hp
  double current_limit_a = 500.0;
  double armature_resistance = 0.075;   ///< ohm, armature plus series field
  double series_field_constant = 6.25e-4;  ///< N*m/A^2, torque = k*I^2
  double speed_constant = 6.25e-4;         ///< V*s/(A*rad), emf = k*I*w

  void validate() const;
  bool operator==(const MotorSpec&) const = default;
};

inline constexpr double kPotentiometerMaxOhm = 5000.0;

/// Linear map of the 0-5 kOhm throttle potentiometer onto PWM duty.
double pot_to_duty(double resistance_ohm);

struct MotorOutput {
  double torque = 0.0;             ///< N*m at the motor shaft
  double current = 0.0;            ///< A, armature
  double electrical_power = 0.0;   ///< W drawn from the bus
  double effective_voltage = 0.0;  ///< average armature voltage after limiting
  double mechanical_power = 0.0;   ///< torque * shaft speed
};

/// Averaged-PWM series DC motor. The controller lowers the effective duty
/// whenever the commanded one would exceed the current limit or the rated
/// mechanical power.
MotorOutput motor_step(double duty, double shaft_speed, const MotorSpec& spec);

/// Largest duty whose electrical draw at `shaft_speed` stays within `power_w`.
double duty_for_power(double power_w, double shaft_speed, const MotorSpec& spec);

struct SprocketSet {
  double pedal_ratio = 2.5;   ///< pedal shaft revs per axle rev
  double motor_ratio = 4.0;   ///< motor revs per axle rev
  double wheel_radius_m = 0.25;

  void validate() const;
  bool operator==(const SprocketSet&) const = default;
};

struct ClutchState {
  bool engaged = false;
  double transmitted_torque = 0.0;  ///< N*m at the axle, never negative
};

/// One-way friction clutch on the pedal input shaft. Ties engage.
ClutchState clutch_resolve(double pedal_cadence, double rider_torque, double axle_speed,
                           const SprocketSet& sprockets);

double wheel_force(double axle_torque_total, const SprocketSet& sprockets);

/// Rider effort at the pedal input shaft. The rider follows the shaft when
/// coupled, but cannot spin it slower than min_cadence or faster than
/// max_cadence, and cannot push harder than max_torque.
struct RiderModel {
  double min_cadence = 1.0;   ///< rad/s
  double max_cadence = 35.0;  ///< rad/s
  double max_torque = 40.0;   ///< N*m

  void validate() const;
  bool operator==(const RiderModel&) const = default;
};

struct PedalEffort {
  double cadence = 0.0;
  double torque = 0.0;
};

PedalEffort rider_effort(double pedal_power_w, double axle_speed, const SprocketSet& sprockets,
                         const RiderModel& rider);

}  // namespace zem
