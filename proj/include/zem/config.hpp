#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zem/sim.hpp"

namespace zem {

/// Everything a command can be configured with. Units inside are SI; the
/// file format carries the unit in each key name (mass_kg, threshold_mph).
struct RunConfig {
  Scenario scenario;
  ClockTime window_start = ClockTime::hms(8, 44);
  ClockTime window_end = ClockTime::hms(16, 24);
  double profile_step_s = 60.0;
  std::vector<double> derates = {0.0, 0.05, 0.30};

  bool operator==(const RunConfig&) const = default;
};

/// Parses the sectioned `key = value` format. Throws ConfigError listing
/// every syntax problem, unknown key and constraint violation.
RunConfig parse_config(std::string_view text, bool require_segments = false);
RunConfig load_config(const std::string& path, bool require_segments = false);

/// Writes every setting, defaults included, in the format parse_config reads.
std::string dump_config(const RunConfig& config);

/// Constraint checks that do not depend on the scenario having segments.
std::vector<std::string> config_violations(const RunConfig& config, bool require_segments);

}  // namespace zem
