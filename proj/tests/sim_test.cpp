#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "scenarios.hpp"
#include "zem/errors.hpp"
#include "zem/sim.hpp"
#include "zem/units.hpp"

using namespace zem;

TEST_SUITE("sim") {
  TEST_CASE("idle scenario only feeds the aux load") {
    const Scenario sc = suite::idle();
    const RunResult r = run(sc);
    CHECK(r.trace.rows.size() == 1200);
    double previous = 1.0 + 1e-12;
    for (const TraceRow& row : r.trace.rows) {
      CHECK(row.speed_mps == 0.0);
      CHECK(row.motor_current_a == 0.0);
      CHECK(row.pedal_power_w == 0.0);
      CHECK(row.pv_power_w == 0.0);
      CHECK(row.aux_power_w == doctest::Approx(100.0));
      CHECK(row.battery_power_w == doctest::Approx(100.0));
      CHECK(row.soc <= previous);
      previous = row.soc;
    }
    // soc drop equals the aux draw through the Peukert capacity
    const BatterySpec bank = bank_equivalent(sc.bank);
    const double current = 100.0 / 48.0;
    const double expected = 120.0 / 3600.0 * current / full_range_ah(bank, current);
    CHECK(1.0 - r.final_state.soc == doctest::Approx(expected).epsilon(1e-9));
    CHECK(r.audit.within_tolerance());
  }

  TEST_CASE("pedal-only settles in the 5-7 mph band") {
    const RunResult r = run(suite::pedal_only());
    const double v = mps_to_mph(r.final_state.speed_mps);
    CHECK(v >= 5.0);
    CHECK(v <= 7.0);
    CHECK(r.final_state.speed_mps ==
          doctest::Approx(pedal_cruise_speed(120.0, VehicleParams{})).epsilon(1e-3));
    for (const TraceRow& row : r.trace.rows) {
      CHECK_FALSE(row.motor_enabled);
      CHECK(row.clutch_engaged);
      CHECK(row.motor_current_a == 0.0);
    }
  }

  TEST_CASE("motor at 6 mph respects the ratings") {
    const Scenario sc = suite::motor_only();
    const RunResult r = run(sc);
    bool enabled = false;
    for (const TraceRow& row : r.trace.rows) {
      CHECK(row.motor_current_a <= 500.0 + 1e-9);
      CHECK(row.motor_mechanical_w <= 7457.0 * (1 + 1e-12));
      enabled = enabled || row.motor_enabled;
    }
    CHECK(enabled);
    CHECK(r.trace.rows.front().motor_enabled);
    CHECK(r.final_state.position_m > 0.0);
  }

  TEST_CASE("energy ledgers close on the suite") {
    for (const auto& [name, sc] : suite::standard()) {
      CAPTURE(name);
      const RunResult r = run(sc);
      CHECK(r.audit.within_tolerance());
      CHECK(std::abs(r.audit.bus_residual) <= 1e-6 * std::max(1.0, r.audit.bus_in));
      CHECK(std::abs(r.audit.wheel_residual) <= 1e-6 * std::max(1.0, r.audit.wheel_in));
    }
  }

  TEST_CASE("sunlit segments charge the bank") {
    Scenario sc;
    sc.initial_soc = 0.5;
    Segment s = suite::seg(600.0);
    s.sun = true;
    sc.segments = {s};
    const RunResult r = run(sc);
    CHECK(r.final_state.soc > 0.5);
    for (const TraceRow& row : r.trace.rows) {
      CHECK(row.pv_power_w > 0.0);
      CHECK(row.pv_to_load_w == doctest::Approx(100.0));
      CHECK(row.battery_power_w < 0.0);
      CHECK(row.pv_to_battery_w <= 2160.0);
    }
  }

  TEST_CASE("full bank curtails the surplus") {
    Scenario sc;
    Segment s = suite::seg(30.0);
    s.sun = true;
    sc.segments = {s};
    const RunResult r = run(sc);
    CHECK(r.final_state.soc == 1.0);
    CHECK(r.audit.curtailed_wh > 0.0);
    CHECK(r.audit.battery_charge_wh == 0.0);
    CHECK(r.audit.within_tolerance());
  }

  TEST_CASE("exhaustion limits the loads to PV and is flagged") {
    const RunResult r = run(suite::soc_exhaustion());
    REQUIRE(r.audit.exhausted_at_s.has_value());
    bool flagged = false;
    for (const TraceRow& row : r.trace.rows) {
      CHECK(row.soc >= 0.2 - 1e-12);
      // After the step that reaches min_soc the bank supplies nothing.
      if (flagged && row.battery_exhausted) CHECK(row.battery_power_w <= 1e-6);
      flagged = flagged || row.battery_exhausted;
    }
    CHECK(flagged);
    CHECK(r.final_state.soc >= 0.2 - 1e-12);
    CHECK(r.audit.within_tolerance());
  }

  TEST_CASE("direction changes wait for standstill") {
    const RunResult r = run(suite::reverse_manoeuvre());
    bool reversed = false;
    for (const TraceRow& row : r.trace.rows) {
      if (row.direction == Direction::reverse) {
        if (!reversed) CHECK(row.speed_mps == 0.0);
        reversed = true;
        CHECK(row.motor_enabled == (row.duty > 0.0));
      }
    }
    CHECK(reversed);
    CHECK(r.final_state.direction == Direction::reverse);
  }

  TEST_CASE("speed controller holds its target") {
    const RunResult r = run(suite::target_speed());
    const double v = mps_to_mph(r.final_state.speed_mps);
    CHECK(v > 10.0);
    CHECK(v < 12.0);
  }

  TEST_CASE("validation lists every violation") {
    Scenario sc;
    sc.bank = {silicone_reference(), 8, 1, 8};
    Segment bad = suite::seg(0.15);
    bad.potentiometer_ohm = 9000.0;
    sc.segments = {bad};
    try {
      validate(sc);
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      const auto& v = e.violations();
      auto has = [&](const char* needle) {
        return std::any_of(v.begin(), v.end(),
                           [&](const std::string& s) { return s.find(needle) != std::string::npos; });
      };
      CHECK(has("bus voltage"));
      CHECK(has("96 V"));
      CHECK(has("whole number of timesteps"));
      CHECK(has("potentiometer"));
    }
    CHECK_THROWS_AS(run(Scenario{}), ConfigError);
  }

  TEST_CASE("trace csv") {
    Scenario sc = suite::pedal_only();
    sc.segments[0].duration_s = 0.3;
    std::ostringstream out;
    write_trace_csv(out, run(sc).trace);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == kTraceHeader);
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      CHECK(std::count(line.begin(), line.end(), ',') == 15);
    }
    CHECK(rows == 3);
  }

  TEST_CASE("six significant digits") {
    CHECK(format_sig6(0.0) == "0");
    CHECK(format_sig6(1.0) == "1.00000");
    CHECK(format_sig6(123.456789) == "123.457");
    CHECK(format_sig6(-2.5) == "-2.50000");
    CHECK(format_sig6(0.000123456789) == "0.000123457");
    CHECK(format_sig6(1234567.0) == "1234567");
    CHECK(format_sig6(9.999996) == "10.0000");
    CHECK(format_sig6(0.1) == "0.100000");
  }
}
