#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zem/battery.hpp"
#include "zem/clock.hpp"
#include "zem/pv.hpp"
#include "zem/solar.hpp"

namespace zem {

/// round(|predicted - measured| / predicted * 100), ties away from zero.
int percent_difference(double predicted, double measured);

struct MeasurementPoint {
  ClockTime time;
  double power_w = 0.0;
};

using MeasurementSeries = std::vector<MeasurementPoint>;

/// Reads `time_local,power_w` rows; an identical header line is optional.
/// Throws InputDomainError naming the offending line.
MeasurementSeries read_measurement_csv(std::istream& in);

struct MeasurementSummary {
  ClockTime start;
  ClockTime end;
  double average_w = 0.0;
  double max_w = 0.0;
  ClockTime time_of_max;
};

MeasurementSummary summarize(const MeasurementSeries& series);

using ReportCell = std::variant<std::monostate, double, std::string>;

struct ReportRow {
  std::string label;
  ReportCell predicted;
  ReportCell measured;
  ReportCell percent;
};

struct ComparisonReport {
  std::vector<ReportRow> context;  ///< window, irradiance and timing rows
  std::vector<ReportRow> rows;     ///< array output comparisons

  const ReportRow* find(std::string_view label) const;
};

inline const std::vector<double> kDefaultDerates{0.0, 0.05, 0.30};

/// Prediction vs. measurement table. Base predictions are array_power of
/// the window-mean and peak irradiance; derated rows scale the displayed
/// base values, and percentages compare each derated prediction with the
/// raw measurement.
ComparisonReport build_solar_report(const DayStats& predicted, const ArraySpec& array,
                                    const std::optional<MeasurementSummary>& measured,
                                    const std::vector<double>& derates = kDefaultDerates);

struct SolarReplayInputs {
  GeoLocation location;
  CivilDate date;
  AtmosphereParams atmosphere;
  ClockTime window_start = ClockTime::hms(8, 44);
  ClockTime window_end = ClockTime::hms(16, 24);
  double step_s = 60.0;
  ArraySpec array;
  std::vector<double> derates = kDefaultDerates;
};

ComparisonReport replay_solar_experiment(const SolarReplayInputs& inputs,
                                         const MeasurementSummary& measured);

std::string render_text(const ComparisonReport& report);
std::string render_json(const ComparisonReport& report);

struct BatteryReplay {
  double delivered_ah = 0.0;
  double delivered_wh = 0.0;
  double duration_h = 0.0;
  std::optional<double> energy_density_wh_kg;
};

/// Constant-current discharge from full down to min_soc.
BatteryReplay replay_battery_experiment(const BatterySpec& spec, double current_a);

}  // namespace zem
