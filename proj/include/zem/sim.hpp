#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zem/battery.hpp"
#include "zem/clock.hpp"
#include "zem/powertrain.hpp"
#include "zem/pv.hpp"
#include "zem/solar.hpp"
#include "zem/vehicle.hpp"

namespace zem {

struct Segment {
  double duration_s = 1.0;
  double grade_rad = 0.0;
  Direction direction = Direction::forward;
  double potentiometer_ohm = 0.0;
  /// When set, a proportional speed controller drives the duty instead of
  /// the potentiometer.
  std::optional<double> target_speed_mps;
  double pedal_power_w = 0.0;
  double brake_force_n = 0.0;
  bool sun = false;  ///< clear-sky irradiance from the site; otherwise dark

  bool operator==(const Segment&) const = default;
};

struct SolarSite {
  GeoLocation location;
  CivilDate date{std::chrono::year{2008}, std::chrono::month{3}, std::chrono::day{15}};
  AtmosphereParams atmosphere = site_atmosphere();

  bool operator==(const SolarSite&) const = default;
};

struct Scenario {
  std::vector<Segment> segments;
  VehicleParams vehicle;
  BankConfig bank{silicone_reference(), 4, 2, 8};
  ChargeControllerSpec charge_controller;
  ArraySpec array = wire_array(PanelSpec{}, 2, 2);
  MotorSpec motor;
  SprocketSet sprockets;
  RiderModel rider;
  SupervisorConfig supervisor;
  AuxLoads aux;
  SpeDerate derate;
  SolarSite site;
  double timestep_s = 0.1;
  ClockTime start_time = ClockTime::hms(12, 0);
  double initial_speed_mps = 0.0;
  Direction initial_direction = Direction::forward;
  double initial_soc = 1.0;
  double speed_gain = 0.5;  ///< duty per m/s of speed error

  bool operator==(const Scenario&) const = default;
};

/// Every violated constraint of a scenario, including the 48 V bus rule.
std::vector<std::string> scenario_violations(const Scenario& scenario);
void validate(const Scenario& scenario);  ///< throws ConfigError

struct TraceRow {
  double time_s = 0.0;
  double speed_mps = 0.0;
  Direction direction = Direction::forward;
  bool motor_enabled = false;
  double duty = 0.0;
  double motor_current_a = 0.0;
  double motor_torque_nm = 0.0;
  bool clutch_engaged = false;
  double pedal_power_w = 0.0;
  double pv_power_w = 0.0;
  double pv_to_load_w = 0.0;
  double pv_to_battery_w = 0.0;
  double battery_power_w = 0.0;  ///< + discharge, - charge
  double soc = 0.0;
  double aux_power_w = 0.0;
  double position_m = 0.0;

  // Not part of the CSV schema.
  double motor_electrical_w = 0.0;
  double motor_mechanical_w = 0.0;
  double curtailed_w = 0.0;
  bool battery_exhausted = false;
};

inline constexpr std::string_view kTraceHeader =
    "time_s,speed_mps,direction,motor_enabled,duty,motor_current_a,motor_torque_nm,"
    "clutch_engaged,pedal_power_w,pv_power_w,pv_to_load_w,pv_to_battery_w,battery_power_w,"
    "soc,aux_power_w,position_m";

struct Trace {
  std::vector<TraceRow> rows;
};

void write_trace_csv(std::ostream& out, const Trace& trace);
/// Fixed-point rendering with 6 significant digits and no exponent.
std::string format_sig6(double value);

/// Two ledgers closed independently over a run.
///
/// Bus: battery discharge + PV = motor + aux + curtailed + battery charge,
/// with the battery terms read back from the battery state rather than from
/// the requested flows.
///
/// Wheel: motor traction work + pedal traction work = resistive work +
/// brake work + change in kinetic energy, every force times the distance
/// actually travelled in its step.
struct EnergyAudit {
  double battery_discharge_wh = 0.0;
  double battery_charge_wh = 0.0;
  double pv_wh = 0.0;
  double motor_electrical_wh = 0.0;
  double aux_wh = 0.0;
  double curtailed_wh = 0.0;

  double motor_traction_wh = 0.0;
  double pedal_traction_wh = 0.0;
  double resistive_wh = 0.0;
  double brake_wh = 0.0;
  double kinetic_change_wh = 0.0;

  double bus_in = 0.0;
  double bus_out = 0.0;
  double bus_residual = 0.0;
  double wheel_in = 0.0;
  double wheel_out = 0.0;
  double wheel_residual = 0.0;
  std::optional<double> exhausted_at_s;  ///< first step the bank could not serve the load

  /// Both residuals within 1e-6 of their ledger's throughput (1 Wh floor).
  bool within_tolerance() const;
};

struct FinalState {
  double time_s = 0.0;
  double speed_mps = 0.0;
  Direction direction = Direction::forward;
  double position_m = 0.0;
  double soc = 0.0;
};

struct RunResult {
  Trace trace;
  EnergyAudit audit;
  FinalState final_state;
};

/// Fixed-step run. Each trace row holds the state at the start of a step
/// and the controls and power flows applied during it. Per-step order: irradiance, PV, supervisor, motor,
/// clutch, dynamics, power balance, battery.
RunResult run(const Scenario& scenario);

/// Steady pedal-only cruise speed: largest v with resistive(v) * v = power.
double pedal_cruise_speed(double pedal_power_w, const VehicleParams& params, double grade_rad = 0.0);

}  // namespace zem
