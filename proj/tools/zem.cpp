#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zem/cli.hpp"

int main(int argc, char** argv) {
  using namespace zem::cli;

  CLI::App app{"zem - hybrid human/solar/electric vehicle energy simulator"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a drive scenario and write its trace CSV");
  simulate->add_option("--config", sim.config_path, "Scenario configuration file")->required();
  simulate->add_option("--out", sim.out_path, "Trace CSV output path")->capture_default_str();
  simulate->add_flag("--dump-effective-config", sim.dump_effective_config,
                     "Print the configuration with all defaults filled in and exit");

  SolarDayOptions solar;
  std::string solar_config;
  std::string measured;
  std::string report_out;
  std::vector<double> derates;
  double ghi_avg = 0.0;
  double ghi_max = 0.0;
  auto* solar_day = app.add_subcommand("solar-day", "Clear-sky day profile and PV comparison report");
  auto* solar_config_opt = solar_day->add_option("--config", solar_config, "Configuration file");
  auto* measured_opt =
      solar_day->add_option("--measured", measured, "Measured PV power CSV (time_local,power_w)");
  auto* derate_opt = solar_day->add_option("--derate", derates, "SPE derate fractions")->delimiter(',');
  auto* out_opt = solar_day->add_option("--out", report_out, "Write the report as JSON");
  auto* ghi_avg_opt =
      solar_day->add_option("--ghi-avg", ghi_avg, "Use this window-mean irradiance (W/m^2)");
  auto* ghi_max_opt = solar_day->add_option("--ghi-max", ghi_max, "Use this peak irradiance (W/m^2)");
  solar_day->add_flag("--dump-effective-config", solar.dump_effective_config,
                      "Print the configuration with all defaults filled in and exit");

  BatteryOptions bat;
  std::string bat_config;
  std::string chemistry;
  auto* battery = app.add_subcommand("battery", "Constant-current discharge replay");
  auto* bat_config_opt = battery->add_option("--config", bat_config, "Configuration file");
  auto* chem_opt = battery->add_option("--chemistry", chemistry, "lead_acid or silicone");
  battery->add_option("--current", bat.current_a, "Discharge current (A)")->capture_default_str();
  battery->add_flag("--compare", bat.compare, "Show lead-acid and silicone side by side");
  battery->add_flag("--dump-effective-config", bat.dump_effective_config,
                    "Print the configuration with all defaults filled in and exit");

  BatteryOptions cmp;
  std::string cmp_config;
  auto* compare = app.add_subcommand("compare", "Lead-acid vs. silicone discharge comparison");
  auto* cmp_config_opt = compare->add_option("--config", cmp_config, "Configuration file");
  compare->add_option("--current", cmp.current_a, "Discharge current (A)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    std::cerr << "error: usage: " << msg << '\n';
    return kInvalid;
  }

  if (simulate->parsed()) return cmd_simulate(sim, std::cout, std::cerr);
  if (solar_day->parsed()) {
    if (*solar_config_opt) solar.config_path = solar_config;
    if (*measured_opt) solar.measured_path = measured;
    if (*derate_opt) solar.derates = derates;
    if (*out_opt) solar.out_path = report_out;
    if (*ghi_avg_opt) solar.ghi_average = ghi_avg;
    if (*ghi_max_opt) solar.ghi_max = ghi_max;
    return cmd_solar_day(solar, std::cout, std::cerr);
  }
  if (battery->parsed()) {
    if (*bat_config_opt) bat.config_path = bat_config;
    if (*chem_opt) bat.chemistry = chemistry;
    return cmd_battery(bat, std::cout, std::cerr);
  }
  if (*cmp_config_opt) cmp.config_path = cmp_config;
  return cmd_compare(cmp, std::cout, std::cerr);
}
