#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zem::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;  // config validation or input-domain failure
inline constexpr int kIoFailure = 2;

struct SimulateOptions {
  std::string config_path;
  std::string out_path = "trace.csv";
  bool dump_effective_config = false;
};

struct SolarDayOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> measured_path;
  std::optional<std::vector<double>> derates;
  std::optional<std::string> out_path;  ///< structured report (JSON)
  std::optional<double> ghi_average;    ///< replaces the clear-sky window mean
  std::optional<double> ghi_max;        ///< replaces the clear-sky peak
  bool dump_effective_config = false;
};

struct BatteryOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> chemistry;
  double current_a = 12.0;
  bool compare = false;
  bool dump_effective_config = false;
};

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int cmd_solar_day(const SolarDayOptions& options, std::ostream& out, std::ostream& err);
int cmd_battery(const BatteryOptions& options, std::ostream& out, std::ostream& err);
/// Side-by-side lead-acid / silicone discharge comparison.
int cmd_compare(const BatteryOptions& options, std::ostream& out, std::ostream& err);

}  // namespace zem::cli
