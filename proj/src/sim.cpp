#include "zem/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>

#include "zem/errors.hpp"
#include "zem/units.hpp"

namespace zem {
namespace {

void check(std::vector<std::string>& out, const std::string& where,
           const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) out.push_back(where + ": " + v);
  } catch (const std::exception& e) {
    out.push_back(where + ": " + e.what());
  }
}

std::size_t step_count(double duration_s, double dt) {
  return static_cast<std::size_t>(std::llround(duration_s / dt));
}

}  // namespace

std::vector<std::string> scenario_violations(const Scenario& s) {
  std::vector<std::string> out;
  check(out, "vehicle", [&] { s.vehicle.validate(); });
  check(out, "battery", [&] { s.bank.battery.validate(); });
  check(out, "bank", [&] { bank_aggregate(s.bank); });
  check(out, "charge_controller", [&] { s.charge_controller.validate(); });
  check(out, "motor", [&] { s.motor.validate(); });
  check(out, "drivetrain", [&] { s.sprockets.validate(); });
  check(out, "rider", [&] { s.rider.validate(); });
  check(out, "supervisor", [&] { s.supervisor.validate(); });
  check(out, "aux", [&] { s.aux.validate(); });
  check(out, "array", [&] {
    s.derate.validate();
    if (!(wire_array(s.array.panel, s.array.series_count, s.array.parallel_count) == s.array))
      throw InputDomainError("array ratings do not match its panel and wiring");
  });
  check(out, "site", [&] {
    s.site.location.validate();
    s.site.atmosphere.validate();
    if (!s.site.date.ok()) throw InputDomainError("invalid date");
  });

  if (s.bank.series_count >= 1 && s.bank.parallel_count >= 1) {
    const double bus = s.bank.series_count * s.bank.battery.v_nominal;
    if (bus != s.motor.supply_voltage || bus != s.charge_controller.bus_voltage) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "bus voltage: battery bank provides %g V but the motor and charge controller "
                    "require %g V / %g V",
                    bus, s.motor.supply_voltage, s.charge_controller.bus_voltage);
      out.emplace_back(buf);
    }
  }

  const bool dt_ok = s.timestep_s > 0.0 && s.timestep_s <= 1.0;
  if (!dt_ok) out.emplace_back("sim: timestep must lie in (0, 1] s");
  if (!(s.initial_soc >= 0.0 && s.initial_soc <= 1.0))
    out.emplace_back("sim: initial soc must lie in [0, 1]");
  if (!(s.initial_speed_mps >= 0.0)) out.emplace_back("sim: initial speed must be nonnegative");
  if (!(s.speed_gain >= 0.0)) out.emplace_back("sim: speed gain must be nonnegative");
  if (!(s.start_time.seconds >= 0.0 && s.start_time.seconds < 86400.0))
    out.emplace_back("sim: start time must lie within the day");
  if (s.segments.empty()) out.emplace_back("segments: at least one segment is required");

  double clock = s.start_time.seconds;
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    const Segment& seg = s.segments[i];
    const std::string where = "segment " + std::to_string(i + 1) + ": ";
    if (!(seg.duration_s > 0.0)) {
      out.push_back(where + "duration must be positive");
    } else if (dt_ok) {
      const double steps = seg.duration_s / s.timestep_s;
      if (std::llround(steps) < 1 || std::abs(steps - std::round(steps)) > 1e-6)
        out.push_back(where + "duration must be a whole number of timesteps");
    }
    if (!(seg.potentiometer_ohm >= 0.0 && seg.potentiometer_ohm <= kPotentiometerMaxOhm))
      out.push_back(where + "potentiometer must lie in [0, 5000] ohm");
    if (seg.target_speed_mps && !(*seg.target_speed_mps >= 0.0))
      out.push_back(where + "target speed must be nonnegative");
    if (!(seg.pedal_power_w >= 0.0)) out.push_back(where + "pedal power must be nonnegative");
    if (!(seg.brake_force_n >= 0.0)) out.push_back(where + "brake force must be nonnegative");
    if (!(std::abs(seg.grade_rad) < std::numbers::pi / 2))
      out.push_back(where + "grade must lie within (-pi/2, pi/2)");
    clock += seg.duration_s;
    if (seg.sun && clock > 86400.0) out.push_back(where + "sunlit segment runs past midnight");
  }
  return out;
}

void validate(const Scenario& scenario) {
  auto v = scenario_violations(scenario);
  if (!v.empty()) throw ConfigError(std::move(v));
}

bool EnergyAudit::within_tolerance() const {
  return std::abs(bus_residual) <= 1e-6 * std::max(bus_in, 1.0) &&
         std::abs(wheel_residual) <= 1e-6 * std::max(std::max(wheel_in, wheel_out), 1.0);
}

RunResult run(const Scenario& s) {
  validate(s);

  const double dt = s.timestep_s;
  const double hours = dt / kSecondsPerHour;
  const BatterySpec bank = bank_equivalent(s.bank);
  const double bus_voltage = bank.v_nominal;
  const double aux_demand = aux_power_draw(s.aux);

  RunResult result;
  EnergyAudit& audit = result.audit;
  VehicleState vehicle{s.initial_speed_mps, s.initial_direction, 0.0, 0.0};
  BatteryState battery = fresh_state(bank, s.initial_soc);

  std::size_t total = 0;
  for (const auto& seg : s.segments) total += step_count(seg.duration_s, dt);
  result.trace.rows.reserve(total);

  std::size_t k = 0;
  for (const Segment& seg : s.segments) {
    const std::size_t n = step_count(seg.duration_s, dt);
    for (std::size_t i = 0; i < n; ++i, ++k) {
      const double t = static_cast<double>(k) * dt;
      vehicle.grade_rad = seg.grade_rad;

      // Direction only flips at standstill; until then nothing drives.
      if (seg.direction != vehicle.direction && vehicle.speed == 0.0)
        vehicle.direction = seg.direction;
      const bool reversing_pending = seg.direction != vehicle.direction;

      TraceRow row;
      row.time_s = t;
      row.speed_mps = vehicle.speed;
      row.direction = vehicle.direction;
      row.position_m = vehicle.position;
      row.soc = battery.soc;

      // irradiance -> PV
      if (seg.sun) {
        const SolarInstant sun =
            solar_position(s.site.location, {s.site.date, s.start_time + t});
        row.pv_power_w =
            array_power(bird_clear_sky(sun, s.site.atmosphere).global_horizontal, s.array, s.derate);
      }

      // supervisor -> motor
      const bool gate = supervisor_gate(vehicle, s.supervisor);
      double duty = 0.0;
      if (gate && !reversing_pending) {
        duty = seg.target_speed_mps
                   ? std::clamp(s.speed_gain * (*seg.target_speed_mps - vehicle.speed), 0.0, 1.0)
                   : pot_to_duty(seg.potentiometer_ohm);
      }
      const double axle_speed = vehicle.speed / s.sprockets.wheel_radius_m;
      const double shaft_speed = axle_speed * s.sprockets.motor_ratio;
      MotorOutput motor = motor_step(duty, shaft_speed, s.motor);

      // A depleted bank leaves the loads to whatever the array supplies.
      double aux = aux_demand;
      const double headroom = charge_headroom_w(battery, bank, dt);
      auto route = [&] {
        PvPowerSplit split = charge_controller_split(
            row.pv_power_w, motor.electrical_power + aux, s.charge_controller, headroom > 0.0);
        if (split.to_battery > headroom) {
          split.curtailed += split.to_battery - headroom;
          split.to_battery = headroom;
        }
        return split;
      };
      PvPowerSplit split = route();
      double deficit = motor.electrical_power + aux - split.to_load;
      if (deficit > 0.0) {
        const double current = deficit / bus_voltage;
        const double drop = current * hours / full_range_ah(bank, current);
        if (battery.soc - drop < bank.min_soc) {
          // Only the charge left above min_soc is available this step.
          row.battery_exhausted = true;
          if (!audit.exhausted_at_s) audit.exhausted_at_s = t;
          const double reserve =
              current_to_floor(battery, bank, bank.min_soc, dt) * bus_voltage;
          const double supply = row.pv_power_w + reserve;
          aux = std::min(aux_demand, supply);
          const double budget = supply - aux;
          if (motor.electrical_power > budget) {
            duty = std::min(duty, duty_for_power(budget, shaft_speed, s.motor));
            motor = motor_step(duty, shaft_speed, s.motor);
          }
          split = route();
          deficit = std::min(reserve, std::max(0.0, motor.electrical_power + aux - split.to_load));
        }
      }
      row.motor_enabled = gate && duty > 0.0;
      row.duty = duty;
      row.motor_current_a = motor.current;
      row.motor_torque_nm = motor.torque;
      row.motor_electrical_w = motor.electrical_power;
      row.motor_mechanical_w = motor.mechanical_power;

      // clutch: the pedal shaft only drives forward
      ClutchState clutch;
      if (vehicle.direction == Direction::forward && !reversing_pending) {
        const PedalEffort effort = rider_effort(seg.pedal_power_w, axle_speed, s.sprockets, s.rider);
        clutch = clutch_resolve(effort.cadence, effort.torque, axle_speed, s.sprockets);
      }
      row.clutch_engaged = clutch.engaged;
      row.pedal_power_w = clutch.transmitted_torque * axle_speed;

      // dynamics
      const double motor_force = wheel_force(motor.torque * s.sprockets.motor_ratio, s.sprockets);
      const double pedal_force = wheel_force(clutch.transmitted_torque, s.sprockets);
      const double resistive = resistive_forces(vehicle, s.vehicle);
      const VehicleState next = longitudinal_step(vehicle, motor_force + pedal_force,
                                                  seg.brake_force_n, s.vehicle, dt);
      const double travelled = std::abs(next.position - vehicle.position);

      // power balance -> battery
      row.pv_to_load_w = split.to_load;
      row.pv_to_battery_w = split.to_battery;
      row.curtailed_w = split.curtailed;
      row.aux_power_w = aux;
      row.battery_power_w = deficit - split.to_battery;
      const BatteryState before = battery;
      if (deficit > 0.0) battery = discharge_step(battery, bank, deficit / bus_voltage, dt);
      if (split.to_battery > 0.0) battery = charge_step(battery, bank, split.to_battery, dt);

      audit.battery_discharge_wh += battery.delivered_wh - before.delivered_wh;
      audit.battery_charge_wh += battery.accepted_wh - before.accepted_wh;
      audit.pv_wh += row.pv_power_w * hours;
      audit.motor_electrical_wh += motor.electrical_power * hours;
      audit.aux_wh += aux * hours;
      audit.curtailed_wh += split.curtailed * hours;

      constexpr double kJoulesPerWh = 3600.0;
      audit.motor_traction_wh += motor_force * travelled / kJoulesPerWh;
      audit.pedal_traction_wh += pedal_force * travelled / kJoulesPerWh;
      audit.resistive_wh += resistive * travelled / kJoulesPerWh;
      audit.brake_wh += seg.brake_force_n * travelled / kJoulesPerWh;
      audit.kinetic_change_wh += 0.5 * s.vehicle.mass_kg *
                                 (next.speed * next.speed - vehicle.speed * vehicle.speed) /
                                 kJoulesPerWh;

      vehicle = next;
      result.trace.rows.push_back(row);
    }
  }

  audit.bus_in = audit.battery_discharge_wh + audit.pv_wh;
  audit.bus_out =
      audit.motor_electrical_wh + audit.aux_wh + audit.curtailed_wh + audit.battery_charge_wh;
  audit.bus_residual = audit.bus_in - audit.bus_out;
  audit.wheel_in = audit.motor_traction_wh + audit.pedal_traction_wh;
  audit.wheel_out = audit.resistive_wh + audit.brake_wh + audit.kinetic_change_wh;
  audit.wheel_residual = audit.wheel_in - audit.wheel_out;

  result.final_state = {static_cast<double>(k) * dt, vehicle.speed, vehicle.direction,
                        vehicle.position, battery.soc};
  return result;
}

double pedal_cruise_speed(double pedal_power_w, const VehicleParams& params, double grade_rad) {
  if (!(pedal_power_w >= 0.0)) throw InputDomainError("pedal power must be nonnegative");
  auto surplus = [&](double v) {
    return pedal_power_w - resistive_forces({v, Direction::forward, 0.0, grade_rad}, params) * v;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (surplus(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (surplus(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string format_sig6(double value) {
  if (value == 0.0 || !std::isfinite(value)) return value == 0.0 ? "0" : "nan";
  const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(value))));
  int decimals = std::max(0, 5 - magnitude);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  // Rounding can carry into a new digit (9.999995 -> 10.00000).
  double printed = std::strtod(buf, nullptr);
  if (printed != 0.0 &&
      static_cast<int>(std::floor(std::log10(std::abs(printed)))) > magnitude && decimals > 0) {
    std::snprintf(buf, sizeof buf, "%.*f", decimals - 1, value);
    printed = std::strtod(buf, nullptr);
  }
  if (printed == 0.0) return "0";
  return buf;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : trace.rows) {
    out << format_sig6(r.time_s) << ',' << format_sig6(r.speed_mps) << ','
        << to_string(r.direction) << ',' << (r.motor_enabled ? 1 : 0) << ','
        << format_sig6(r.duty) << ',' << format_sig6(r.motor_current_a) << ','
        << format_sig6(r.motor_torque_nm) << ',' << (r.clutch_engaged ? 1 : 0) << ','
        << format_sig6(r.pedal_power_w) << ',' << format_sig6(r.pv_power_w) << ','
        << format_sig6(r.pv_to_load_w) << ',' << format_sig6(r.pv_to_battery_w) << ','
        << format_sig6(r.battery_power_w) << ',' << format_sig6(r.soc) << ','
        << format_sig6(r.aux_power_w) << ',' << format_sig6(r.position_m) << '\n';
  }
}

}  // namespace zem
