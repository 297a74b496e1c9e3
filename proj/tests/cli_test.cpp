#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "zem/cli.hpp"
#include "zem/config.hpp"
#include "zem/sim.hpp"

using namespace zem;
using namespace zem::cli;
namespace fs = std::filesystem;

namespace {

const std::string kSrc = ZEM_SOURCE_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "zem_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void check_single_error_line(const std::string& err, const std::string& kind) {
  CHECK(std::count(err.begin(), err.end(), '\n') == 1);
  CHECK(err.rfind("error: " + kind + ": ", 0) == 0);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("simulate writes a trace") {
    std::ostringstream out, err;
    const fs::path trace = scratch("pedal.csv");
    const int code = cmd_simulate({kSrc + "/configs/pedal_only.toml", trace.string()}, out, err);
    CHECK(code == kOk);
    CHECK(err.str().empty());
    const std::string csv = slurp(trace);
    CHECK(csv.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
    CHECK(out.str().find("energy audit: ok") != std::string::npos);
  }

  TEST_CASE("simulate rejects a 96 V bank") {
    std::ostringstream out, err;
    const int code =
        cmd_simulate({kSrc + "/configs/bank_96v.toml", scratch("x.csv").string()}, out, err);
    CHECK(code == kInvalid);
    check_single_error_line(err.str(), "config");
    CHECK(err.str().find("bus voltage") != std::string::npos);
  }

  TEST_CASE("simulate io failures") {
    std::ostringstream out, err;
    CHECK(cmd_simulate({"/nonexistent/zem.toml", "t.csv"}, out, err) == kIoFailure);
    check_single_error_line(err.str(), "io");
    std::ostringstream out2, err2;
    CHECK(cmd_simulate({kSrc + "/configs/pedal_only.toml", "/nonexistent/dir/t.csv"}, out2, err2) ==
          kIoFailure);
    check_single_error_line(err2.str(), "io");
  }

  TEST_CASE("simulate needs segments") {
    std::ostringstream out, err;
    CHECK(cmd_simulate({kSrc + "/configs/lead_acid.toml", scratch("y.csv").string()}, out, err) ==
          kInvalid);
    check_single_error_line(err.str(), "config");
  }

  TEST_CASE("dumped config re-parses identically") {
    std::ostringstream out, err;
    SimulateOptions o{kSrc + "/configs/campus_loop.toml", "unused.csv", true};
    CHECK(cmd_simulate(o, out, err) == kOk);
    const RunConfig original = load_config(kSrc + "/configs/campus_loop.toml", true);
    CHECK(parse_config(out.str(), true) == original);
  }

  TEST_CASE("solar-day reproduces the table from its summary inputs") {
    SolarDayOptions o;
    o.measured_path = kSrc + "/data/measured_2008-03-15.csv";
    o.ghi_average = 439.0;
    o.ghi_max = 582.0;
    o.out_path = scratch("report.json").string();
    std::ostringstream out, err;
    REQUIRE(cmd_solar_day(o, out, err) == kOk);
    const auto doc = nlohmann::json::parse(slurp(*o.out_path));
    const double want[6][3] = {{360, 265, 26}, {342, 252, 23}, {252, 186, 5},
                               {478, 347, 27}, {454, 330, 24}, {335, 243, 4}};
    REQUIRE(doc["rows"].size() == 6);
    for (int i = 0; i < 6; ++i) {
      CHECK(doc["rows"][i]["predicted"].get<double>() == want[i][0]);
      CHECK(doc["rows"][i]["measured"].get<double>() == want[i][1]);
      CHECK(doc["rows"][i]["percent_difference"].get<double>() == want[i][2]);
    }
    CHECK(out.str().find("Continuous PV Array Output") != std::string::npos);
  }

  TEST_CASE("solar-day without measurements") {
    SolarDayOptions o;
    o.derates = std::vector<double>{0.0};
    std::ostringstream out, err;
    CHECK(cmd_solar_day(o, out, err) == kOk);
    CHECK(out.str().find("SPE") == std::string::npos);
  }

  TEST_CASE("solar-day malformed measurements") {
    const fs::path bad = scratch("bad.csv");
    std::ofstream(bad) << "time_local,power_w\n08:44,100\n08:45,lots\n";
    SolarDayOptions o;
    o.measured_path = bad.string();
    std::ostringstream out, err;
    CHECK(cmd_solar_day(o, out, err) == kInvalid);
    check_single_error_line(err.str(), "input");
    CHECK(err.str().find("line 3") != std::string::npos);

    SolarDayOptions missing;
    missing.measured_path = "/nonexistent/m.csv";
    std::ostringstream out2, err2;
    CHECK(cmd_solar_day(missing, out2, err2) == kIoFailure);

    SolarDayOptions bad_derate;
    bad_derate.derates = std::vector<double>{1.5};
    std::ostringstream out3, err3;
    CHECK(cmd_solar_day(bad_derate, out3, err3) == kInvalid);
    check_single_error_line(err3.str(), "config");
  }

  TEST_CASE("battery replay output") {
    BatteryOptions o;
    o.chemistry = "lead_acid";
    std::ostringstream out, err;
    CHECK(cmd_battery(o, out, err) == kOk);
    CHECK(out.str().find("21.0 Ah") != std::string::npos);
    o.chemistry = "silicone";
    std::ostringstream out2;
    CHECK(cmd_battery(o, out2, err) == kOk);
    CHECK(out2.str().find("43.8 Ah") != std::string::npos);

    o.current_a = 0.0;
    std::ostringstream out3, err3;
    CHECK(cmd_battery(o, out3, err3) == kInvalid);
    check_single_error_line(err3.str(), "input");

    BatteryOptions bad;
    bad.chemistry = "nickel";
    std::ostringstream out4, err4;
    CHECK(cmd_battery(bad, out4, err4) == kInvalid);
  }

  TEST_CASE("compare lists both chemistries") {
    BatteryOptions o;
    std::ostringstream out, err;
    CHECK(cmd_compare(o, out, err) == kOk);
    CHECK(out.str().find("21.0") != std::string::npos);
    CHECK(out.str().find("43.8") != std::string::npos);
    CHECK(out.str().find("23.4") != std::string::npos);
    CHECK(out.str().find("35.8") != std::string::npos);
  }
}
