#include <cmath>

#include "doctest.h"
#include "zem/errors.hpp"
#include "zem/pv.hpp"

using namespace zem;

TEST_SUITE("pv") {
  TEST_CASE("panel area from the STC rating") {
    CHECK(panel_area_from_stc(205.0, 0.165) == doctest::Approx(1.2424).epsilon(1e-4));
    CHECK(panel_area_from_stc(1000.0, 1.0) == 1.0);
    CHECK(panel_area_from_stc(0.0, 0.165) == 0.0);
    CHECK_THROWS_AS(panel_area_from_stc(205.0, 0.0), InputDomainError);
    CHECK_THROWS_AS(panel_area_from_stc(205.0, -0.1), InputDomainError);
  }

  TEST_CASE("wiring the four-panel array") {
    const ArraySpec a = wire_array(PanelSpec{}, 2, 2);
    CHECK(a.v_nominal == 80.0);
    CHECK(a.i_nominal == doctest::Approx(10.2));
    CHECK(a.p_stc == 820.0);
    CHECK(a.total_area_m2 == doctest::Approx(4 * 1.244));

    const ArraySpec one = wire_array(PanelSpec{}, 1, 1);
    CHECK(one.v_nominal == 40.0);
    CHECK(one.i_nominal == 5.1);
    CHECK(one.p_stc == 205.0);
    CHECK_THROWS_AS(wire_array(PanelSpec{}, 0, 2), InputDomainError);
    CHECK_THROWS_AS(wire_array(PanelSpec{}, 2, 0), InputDomainError);
  }

  TEST_CASE("array output against the measured-day predictions") {
    const ArraySpec a = wire_array(PanelSpec{}, 2, 2);
    CHECK(std::abs(array_power(439.0, a) - 360.0) <= 1.0);
    CHECK(std::abs(array_power(582.0, a) - 478.0) <= 1.0);
    CHECK(std::abs(array_power(439.0, a, {0.05}) - 342.0) <= 1.0);
    CHECK(std::abs(array_power(439.0, a, {0.30}) - 252.0) <= 1.0);
    CHECK(array_power(0.0, a, {0.3}) == 0.0);
    // exact arithmetic: ghi * area * efficiency * factor
    CHECK(array_power(439.0, a) == doctest::Approx(439.0 * 4 * 1.244 * 0.165));
  }

  TEST_CASE("array output clamps at the STC rating") {
    const ArraySpec a = wire_array(PanelSpec{}, 2, 2);
    CHECK(array_power(1500.0, a) == 820.0);
    CHECK(array_power(1500.0, a, {0.05}) == doctest::Approx(779.0));
    CHECK_THROWS_AS(array_power(-1.0, a), InputDomainError);
    CHECK_THROWS_AS(array_power(500.0, a, {1.5}), InputDomainError);
  }

  TEST_CASE("STC-derived panel") {
    const PanelSpec p = PanelSpec::from_stc(40.0, 5.1, 205.0, 0.165);
    CHECK(p.area_m2 == doctest::Approx(205.0 / 165.0));
    CHECK(array_power(1000.0, wire_array(p, 1, 1)) == doctest::Approx(205.0));
  }

  TEST_CASE("charge controller split") {
    const ChargeControllerSpec cc;
    CHECK(cc.max_charge_power() == 2160.0);

    PvPowerSplit s = charge_controller_split(350.0, 200.0, cc, true);
    CHECK(s.to_load == 200.0);
    CHECK(s.to_battery == 150.0);
    CHECK(s.curtailed == 0.0);

    s = charge_controller_split(300.0, 0.0, cc, true);
    CHECK(s.to_battery == 300.0);
    CHECK(s.to_battery / cc.bus_voltage == doctest::Approx(6.25));

    s = charge_controller_split(3000.0, 0.0, cc, true);
    CHECK(s.to_battery == 2160.0);
    CHECK(s.curtailed == 840.0);

    s = charge_controller_split(100.0, 500.0, cc, true);
    CHECK(s.to_load == 100.0);
    CHECK(s.to_battery == 0.0);
    CHECK(s.curtailed == 0.0);

    s = charge_controller_split(350.0, 200.0, cc, false);
    CHECK(s.to_battery == 0.0);
    CHECK(s.curtailed == 150.0);

    CHECK_THROWS_AS(charge_controller_split(-1.0, 0.0, cc, true), InputDomainError);
  }
}
