#include "zem/cli.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>

#include "zem/config.hpp"
#include "zem/errors.hpp"
#include "zem/experiments.hpp"
#include "zem/units.hpp"

namespace zem::cli {
namespace {

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

/// Runs a command body and maps exceptions onto exit codes with a single
/// `error: <kind>: <message>` line.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: io: " << one_line(e.what()) << '\n';
    return kIoFailure;
  } catch (const ConfigError& e) {
    err << "error: config: " << one_line(e.what()) << '\n';
    return kInvalid;
  } catch (const InputDomainError& e) {
    err << "error: input: " << one_line(e.what()) << '\n';
    return kInvalid;
  } catch (const CalibrationError& e) {
    err << "error: input: " << one_line(e.what()) << '\n';
    return kInvalid;
  }
}

RunConfig config_or_default(const std::optional<std::string>& path, bool require_segments) {
  return path ? load_config(*path, require_segments) : RunConfig{};
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

BatterySpec battery_for(const RunConfig& config, Chemistry chemistry) {
  const BatterySpec& configured = config.scenario.bank.battery;
  if (configured.chemistry == chemistry) return configured;
  return chemistry == Chemistry::lead_acid ? lead_acid_reference() : silicone_reference();
}

}  // namespace

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_config(options.config_path, !options.dump_effective_config);
    if (options.dump_effective_config) {
      out << dump_config(config);
      return kOk;
    }
    const RunResult result = run(config.scenario);
    std::ofstream file(options.out_path, std::ios::binary);
    if (!file) throw IoError("cannot write trace file '" + options.out_path + "'");
    write_trace_csv(file, result.trace);
    file.close();
    if (!file) throw IoError("error writing trace file '" + options.out_path + "'");

    const EnergyAudit& a = result.audit;
    out << "steps: " << result.trace.rows.size() << '\n'
        << "final: t=" << fixed(result.final_state.time_s, 1)
        << " s, speed=" << fixed(mps_to_mph(result.final_state.speed_mps), 2)
        << " mph, position=" << fixed(result.final_state.position_m, 1)
        << " m, soc=" << fixed(result.final_state.soc, 4) << '\n'
        << "bus:   in " << fixed(a.bus_in, 3) << " Wh (battery " << fixed(a.battery_discharge_wh, 3)
        << ", pv " << fixed(a.pv_wh, 3) << "), out " << fixed(a.bus_out, 3) << " Wh (motor "
        << fixed(a.motor_electrical_wh, 3) << ", aux " << fixed(a.aux_wh, 3) << ", curtailed "
        << fixed(a.curtailed_wh, 3) << ", charge " << fixed(a.battery_charge_wh, 3)
        << "), residual " << a.bus_residual << " Wh\n"
        << "wheel: in " << fixed(a.wheel_in, 3) << " Wh (motor " << fixed(a.motor_traction_wh, 3)
        << ", pedal " << fixed(a.pedal_traction_wh, 3) << "), out " << fixed(a.wheel_out, 3)
        << " Wh (resistance " << fixed(a.resistive_wh, 3) << ", brake " << fixed(a.brake_wh, 3)
        << ", kinetic " << fixed(a.kinetic_change_wh, 3) << "), residual " << a.wheel_residual
        << " Wh\n"
        << "energy audit: " << (a.within_tolerance() ? "ok" : "FAIL") << '\n';
    if (a.exhausted_at_s)
      out << "battery exhausted at t=" << fixed(*a.exhausted_at_s, 1) << " s\n";
    return a.within_tolerance() ? kOk : kInvalid;
  });
}

int cmd_solar_day(const SolarDayOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig config = config_or_default(options.config_path, false);
    if (options.derates) config.derates = *options.derates;
    for (auto& v : config_violations(config, false)) throw ConfigError(v);
    if (options.dump_effective_config) {
      out << dump_config(config);
      return kOk;
    }
    const Scenario& s = config.scenario;
    const DayProfile profile = day_profile(s.site.location, s.site.date, s.site.atmosphere,
                                           config.window_start, config.window_end,
                                           config.profile_step_s);
    DayStats stats = profile.stats;
    if (options.ghi_average) {
      if (!(*options.ghi_average >= 0.0)) throw InputDomainError("--ghi-avg must be nonnegative");
      stats.average_ghi = *options.ghi_average;
    }
    if (options.ghi_max) {
      if (!(*options.ghi_max >= 0.0)) throw InputDomainError("--ghi-max must be nonnegative");
      stats.max_ghi = *options.ghi_max;
    }

    std::optional<MeasurementSummary> measured;
    if (options.measured_path) {
      std::ifstream in(*options.measured_path);
      if (!in) throw IoError("cannot read measurement file '" + *options.measured_path + "'");
      measured = summarize(read_measurement_csv(in));
    }

    out << "date " << format_date(s.site.date) << ", window " << format_clock(stats.window_start)
        << "-" << format_clock(stats.window_end) << ": average GHI " << fixed(stats.average_ghi, 1)
        << " W/m^2, max " << fixed(stats.max_ghi, 1) << " W/m^2 at "
        << format_clock(stats.time_of_max) << "\n\n";
    const ComparisonReport report = build_solar_report(stats, s.array, measured, config.derates);
    out << render_text(report);

    if (options.out_path) {
      std::ofstream file(*options.out_path, std::ios::binary);
      if (!file) throw IoError("cannot write report file '" + *options.out_path + "'");
      file << render_json(report);
      if (!file) throw IoError("error writing report file '" + *options.out_path + "'");
    }
    return kOk;
  });
}

int cmd_battery(const BatteryOptions& options, std::ostream& out, std::ostream& err) {
  if (options.compare) return cmd_compare(options, out, err);
  return guarded(err, [&] {
    const RunConfig config = config_or_default(options.config_path, false);
    if (options.dump_effective_config) {
      out << dump_config(config);
      return kOk;
    }
    const Chemistry chemistry = options.chemistry ? parse_chemistry(*options.chemistry)
                                                  : config.scenario.bank.battery.chemistry;
    const BatterySpec spec = battery_for(config, chemistry);
    const BatteryReplay r = replay_battery_experiment(spec, options.current_a);
    out << to_string(chemistry) << " at " << fixed(options.current_a, 2) << " A, "
        << fixed(100.0, 0) << "% to " << fixed(spec.min_soc * 100.0, 0) << "% SoC: "
        << fixed(r.delivered_ah, 1) << " Ah in " << fixed(r.duration_h, 2) << " h, "
        << fixed(r.delivered_wh, 1) << " Wh";
    if (r.energy_density_wh_kg) out << ", " << fixed(*r.energy_density_wh_kg, 1) << " Wh/kg";
    out << " (Peukert k = " << fixed(spec.peukert_k, 4) << ")\n";
    return kOk;
  });
}

int cmd_compare(const BatteryOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = config_or_default(options.config_path, false);
    const BatterySpec lead = battery_for(config, Chemistry::lead_acid);
    const BatterySpec sil = battery_for(config, Chemistry::silicone);
    const BatteryReplay a = replay_battery_experiment(lead, options.current_a);
    const BatteryReplay b = replay_battery_experiment(sil, options.current_a);

    auto density = [](const BatteryReplay& r) {
      return r.energy_density_wh_kg ? fixed(*r.energy_density_wh_kg, 1) : std::string("-");
    };
    const std::string effective_label = "Effective Amp-hours (at " + fixed(options.current_a, 0) +
                                        "A, " + fixed(100.0, 0) + " to " +
                                        fixed(sil.min_soc * 100.0, 0) + "% SoC)";
    char buf[256];
    auto line = [&](const std::string& label, const std::string& x, const std::string& y) {
      std::snprintf(buf, sizeof buf, "%-48s  %18s  %18s\n", label.c_str(), x.c_str(), y.c_str());
      out << buf;
    };
    line("Characteristic", "Lead Acid", "Silicone");
    line("Nominal Amp-hours", fixed(lead.rated_ah, 0) + " at " + fixed(lead.rated_current, 2) + "A",
         fixed(sil.rated_ah, 0) + " at " + fixed(sil.rated_current, 2) + "A");
    line("Peukert exponent", fixed(lead.peukert_k, 4), fixed(sil.peukert_k, 4));
    line(effective_label, fixed(a.delivered_ah, 1), fixed(b.delivered_ah, 1));
    line("Discharge duration (h)", fixed(a.duration_h, 2), fixed(b.duration_h, 2));
    line("Energy Density (Wh/kg)", density(a), density(b));
    return kOk;
  });
}

}  // namespace zem::cli
