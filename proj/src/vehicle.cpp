#include "zem/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zem/errors.hpp"

namespace zem {

void VehicleParams::validate() const {
  if (!(mass_kg > 0.0 && drag_area_m2 > 0.0 && air_density > 0.0 && gravity > 0.0))
    throw InputDomainError("vehicle mass, drag area, air density and gravity must be positive");
  if (!(rolling_resistance > 0.0 && rolling_resistance <= 0.05))
    throw InputDomainError("rolling resistance coefficient must lie in (0, 0.05]");
}

std::string_view to_string(Direction d) { return d == Direction::forward ? "forward" : "reverse"; }

Direction parse_direction(std::string_view text) {
  if (text == "forward") return Direction::forward;
  if (text == "reverse") return Direction::reverse;
  throw InputDomainError("unknown direction '" + std::string(text) + "' (expected forward or reverse)");
}

void SupervisorConfig::validate() const {
  if (!(motor_enable_threshold >= 0.0))
    throw InputDomainError("motor enable threshold must be nonnegative");
}

bool supervisor_gate(const VehicleState& state, const SupervisorConfig& config) {
  return config.override_enabled || state.direction == Direction::reverse ||
         state.speed > config.motor_enable_threshold;
}

void AuxLoads::validate() const {
  if (!(dcdc_rating_w > 0.0)) throw InputDomainError("DC/DC rating must be positive");
  if (!(dcdc_efficiency > 0.0 && dcdc_efficiency <= 1.0))
    throw InputDomainError("DC/DC efficiency must lie in (0, 1]");
  if (!(aux_draw_w >= 0.0)) throw InputDomainError("auxiliary draw must be nonnegative");
  if (aux_draw_w > dcdc_rating_w)
    throw ConfigError("auxiliary draw " + std::to_string(aux_draw_w) +
                      " W exceeds the DC/DC rating of " + std::to_string(dcdc_rating_w) + " W");
}

double aux_power_draw(const AuxLoads& loads) {
  loads.validate();
  return loads.aux_draw_w / loads.dcdc_efficiency;
}

double resistive_forces(const VehicleState& state, const VehicleParams& params) {
  const double grade = state.direction == Direction::forward ? state.grade_rad : -state.grade_rad;
  const double weight = params.mass_kg * params.gravity;
  const double rolling = params.rolling_resistance * weight * std::cos(grade);
  const double aero = 0.5 * params.air_density * params.drag_area_m2 * state.speed * state.speed;
  return rolling + aero + weight * std::sin(grade);
}

VehicleState longitudinal_step(const VehicleState& state, double traction, double brake,
                               const VehicleParams& params, double dt_s) {
  if (!(dt_s > 0.0 && dt_s <= 1.0)) throw InputDomainError("time step must lie in (0, 1] s");
  if (!(brake >= 0.0)) throw InputDomainError("brake force must be nonnegative");
  const double net = traction - brake - resistive_forces(state, params);
  const double accel = net / params.mass_kg;
  const double sign = state.direction == Direction::forward ? 1.0 : -1.0;
  VehicleState next = state;
  next.speed = state.speed + accel * dt_s;
  double moving_s = dt_s;
  if (next.speed < 0.0) {
    // Stops partway through the step and stays put.
    next.speed = 0.0;
    moving_s = state.speed > 0.0 ? -state.speed / accel : 0.0;
  }
  next.position = state.position + sign * 0.5 * (state.speed + next.speed) * moving_s;
  return next;
}

}  // namespace zem
