#include "zem/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "json.hpp"

#include "zem/errors.hpp"
#include "zem/units.hpp"

namespace zem {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string derate_label(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "Including %g%% Decrease due to SPE (W)", fraction * 100.0);
  return buf;
}

void add_output_rows(std::vector<ReportRow>& rows, const std::string& base_label, double ghi,
                     const ArraySpec& array, std::optional<double> measured,
                     const std::vector<double>& derates) {
  const double base = round_half_away(array_power(ghi, array));
  auto row = [&](std::string label, double factor) {
    ReportRow r;
    r.label = std::move(label);
    const double predicted = round_half_away(base * factor);
    r.predicted = predicted;
    if (measured) {
      r.measured = round_half_away(*measured * factor);
      r.percent = static_cast<double>(percent_difference(predicted, *measured));
    }
    rows.push_back(std::move(r));
  };
  row(base_label, 1.0);
  for (double f : derates) {
    SpeDerate{f}.validate();
    if (f > 0.0) row(derate_label(f), 1.0 - f);
  }
}

std::string cell_text(const ReportCell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    char buf[64];
    if (*d == std::round(*d)) {
      std::snprintf(buf, sizeof buf, "%.0f", *d);
    } else {
      std::snprintf(buf, sizeof buf, "%.1f", *d);
    }
    return buf;
  }
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return "-";
}

nlohmann::json cell_json(const ReportCell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return nullptr;
}

}  // namespace

int percent_difference(double predicted, double measured) {
  if (!(predicted > 0.0)) throw InputDomainError("predicted value must be positive");
  return static_cast<int>(round_half_away(std::abs(predicted - measured) / predicted * 100.0));
}

MeasurementSeries read_measurement_csv(std::istream& in) {
  MeasurementSeries series;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (series.empty() && text == "time_local,power_w") continue;
    auto fail = [&](const std::string& why) {
      return InputDomainError("measurement line " + std::to_string(number) + ": " + why + " ('" +
                              text + "')");
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
      throw fail("expected time_local,power_w");
    MeasurementPoint p;
    try {
      p.time = parse_clock(trim(std::string_view(text).substr(0, comma)));
    } catch (const InputDomainError&) {
      throw fail("bad time");
    }
    const std::string power = trim(std::string_view(text).substr(comma + 1));
    const char* end = power.data() + power.size();
    auto [ptr, ec] = std::from_chars(power.data(), end, p.power_w);
    if (ec != std::errc{} || ptr != end || !std::isfinite(p.power_w) || p.power_w < 0.0)
      throw fail("bad power value");
    series.push_back(p);
  }
  if (series.empty()) throw InputDomainError("measurement series is empty");
  return series;
}

MeasurementSummary summarize(const MeasurementSeries& series) {
  if (series.empty()) throw InputDomainError("measurement series is empty");
  MeasurementSummary s;
  s.start = series.front().time;
  s.end = series.front().time;
  s.max_w = series.front().power_w;
  s.time_of_max = series.front().time;
  double sum = 0.0;
  for (const auto& p : series) {
    sum += p.power_w;
    s.start = std::min(s.start, p.time);
    s.end = std::max(s.end, p.time);
    if (p.power_w > s.max_w) {
      s.max_w = p.power_w;
      s.time_of_max = p.time;
    }
  }
  s.average_w = sum / static_cast<double>(series.size());
  return s;
}

const ReportRow* ComparisonReport::find(std::string_view label) const {
  for (const auto* list : {&context, &rows}) {
    for (const auto& r : *list) {
      if (r.label == label) return &r;
    }
  }
  return nullptr;
}

ComparisonReport build_solar_report(const DayStats& predicted, const ArraySpec& array,
                                    const std::optional<MeasurementSummary>& measured,
                                    const std::vector<double>& derates) {
  ComparisonReport report;
  ReportRow window{"Time Period of Measured Solar-Battery Charging",
                   format_clock(predicted.window_start) + " to " + format_clock(predicted.window_end),
                   {}, {}};
  if (measured) window.measured = format_clock(measured->start) + " to " + format_clock(measured->end);
  report.context.push_back(window);
  report.context.push_back(
      {"Average Global Solar Radiation (W/m^2)", round_half_away(predicted.average_ghi), {}, {}});
  report.context.push_back(
      {"Maximum Global Solar Radiation (W/m^2)", round_half_away(predicted.max_ghi), {}, {}});
  ReportRow timing{"Time of Max Radiation", format_clock(predicted.time_of_max), {}, {}};
  if (measured) timing.measured = format_clock(measured->time_of_max);
  report.context.push_back(timing);

  std::optional<double> avg;
  std::optional<double> peak;
  if (measured) {
    avg = measured->average_w;
    peak = measured->max_w;
  }
  add_output_rows(report.rows, "Continuous PV Array Output (Watts)", predicted.average_ghi, array,
                  avg, derates);
  add_output_rows(report.rows, "Maximum PV Array Output (Watts)", predicted.max_ghi, array, peak,
                  derates);
  return report;
}

ComparisonReport replay_solar_experiment(const SolarReplayInputs& in,
                                         const MeasurementSummary& measured) {
  const DayProfile profile = day_profile(in.location, in.date, in.atmosphere, in.window_start,
                                         in.window_end, in.step_s);
  return build_solar_report(profile.stats, in.array, measured, in.derates);
}

std::string render_text(const ComparisonReport& report) {
  std::size_t width = 0;
  for (const auto* list : {&report.context, &report.rows})
    for (const auto& r : *list) width = std::max(width, r.label.size());

  std::ostringstream out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-*s  %16s  %16s  %12s\n", static_cast<int>(width), "",
                "Predicted", "Measured", "% Difference");
  out << buf;
  for (const auto* list : {&report.context, &report.rows}) {
    for (const auto& r : *list) {
      std::snprintf(buf, sizeof buf, "%-*s  %16s  %16s  %12s\n", static_cast<int>(width),
                    r.label.c_str(), cell_text(r.predicted).c_str(), cell_text(r.measured).c_str(),
                    cell_text(r.percent).c_str());
      out << buf;
    }
  }
  return out.str();
}

std::string render_json(const ComparisonReport& report) {
  nlohmann::json doc;
  auto rows = [](const std::vector<ReportRow>& list) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : list) {
      arr.push_back({{"label", r.label},
                     {"predicted", cell_json(r.predicted)},
                     {"measured", cell_json(r.measured)},
                     {"percent_difference", cell_json(r.percent)}});
    }
    return arr;
  };
  doc["context"] = rows(report.context);
  doc["rows"] = rows(report.rows);
  return doc.dump(2) + "\n";
}

BatteryReplay replay_battery_experiment(const BatterySpec& spec, double current_a) {
  spec.validate();
  if (!(current_a > 0.0)) throw InputDomainError("discharge current must be positive");

  constexpr double kStep = 1.0;
  const double capacity = full_range_ah(spec, current_a);
  BatteryState state = fresh_state(spec);
  double elapsed = 0.0;
  while (state.soc > spec.min_soc) {
    const double drop = current_a * kStep / kSecondsPerHour / capacity;
    double dt = kStep;
    if (state.soc - drop <= spec.min_soc) {
      dt = (state.soc - spec.min_soc) * capacity * kSecondsPerHour / current_a;
      if (dt <= 0.0) break;
      state = discharge_step(state, spec, current_a, dt);
      state.soc = spec.min_soc;
    } else {
      state = discharge_step(state, spec, current_a, dt);
    }
    elapsed += dt;
  }

  BatteryReplay out;
  out.delivered_ah = state.delivered_ah;
  out.delivered_wh = state.delivered_wh;
  out.duration_h = elapsed / kSecondsPerHour;
  if (spec.mass_kg) out.energy_density_wh_kg = energy_density(state.delivered_wh, *spec.mass_kg);
  return out;
}

}  // namespace zem
