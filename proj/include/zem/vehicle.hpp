#pragma once

#include <string_view>

namespace zem {

struct VehicleParams {
  double mass_kg = 400.0;
  double rolling_resistance = 0.012;
  double drag_area_m2 = 1.2;
  double air_density = 1.2;
  double gravity = 9.81;

  void validate() const;
  bool operator==(const VehicleParams&) const = default;
};

enum class Direction { forward, reverse };

std::string_view to_string(Direction d);
Direction parse_direction(std::string_view text);

struct VehicleState {
  double speed = 0.0;  ///< m/s, magnitude
  Direction direction = Direction::forward;
  double position = 0.0;  ///< m, reverse travel decreases it
  double grade_rad = 0.0;  ///< road grade, positive uphill when moving forward
};

struct SupervisorConfig {
  double motor_enable_threshold = 2.2352;  ///< m/s (5 mph)
  bool override_enabled = false;

  void validate() const;
  bool operator==(const SupervisorConfig&) const = default;
};

/// Motor runs above the threshold going forward, always in reverse, and
/// always when the driver has switched the rule off.
bool supervisor_gate(const VehicleState& state, const SupervisorConfig& config);

struct AuxLoads {
  double dcdc_rating_w = 450.0;
  double aux_draw_w = 90.0;
  double dcdc_efficiency = 0.9;

  void validate() const;
  bool operator==(const AuxLoads&) const = default;
};

/// Bus-side draw of the DC/DC converter. Throws ConfigError above rating.
double aux_power_draw(const AuxLoads& loads);

/// Rolling + aerodynamic + grade resistance opposing the direction of travel.
/// Grade is taken relative to the travel direction, so a forward uphill is a
/// reverse downhill.
double resistive_forces(const VehicleState& state, const VehicleParams& params);

/// Explicit Euler speed update with a trapezoidal position update. A step
/// that would reverse the motion ends at rest at the point where the speed
/// reached zero.
VehicleState longitudinal_step(const VehicleState& state, double traction, double brake,
                               const VehicleParams& params, double dt_s);

}  // namespace zem
