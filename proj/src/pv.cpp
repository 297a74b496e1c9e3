#include "zem/pv.hpp"

#include <algorithm>
#include <cmath>

#include "zem/errors.hpp"

namespace zem {

double panel_area_from_stc(double p_max_w, double efficiency) {
  if (!(efficiency > 0.0 && efficiency <= 1.0))
    throw InputDomainError("panel efficiency must lie in (0, 1]");
  if (!(p_max_w >= 0.0)) throw InputDomainError("panel peak power must be nonnegative");
  return p_max_w / (efficiency * kStcIrradiance);
}

PanelSpec PanelSpec::from_stc(double v_mp, double i_mp, double p_max, double efficiency) {
  return {v_mp, i_mp, p_max, efficiency, panel_area_from_stc(p_max, efficiency)};
}

void PanelSpec::validate() const {
  if (!(v_mp > 0.0 && i_mp > 0.0 && p_max > 0.0))
    throw InputDomainError("panel ratings must be positive");
  if (std::abs(p_max - v_mp * i_mp) > 0.02 * p_max)
    throw InputDomainError("panel p_max must match v_mp * i_mp within 2%");
  if (!(efficiency > 0.0 && efficiency <= 0.30))
    throw InputDomainError("panel efficiency must lie in (0, 0.30]");
  if (!(area_m2 > 0.0)) throw InputDomainError("panel area must be positive");
}

ArraySpec wire_array(const PanelSpec& panel, int series, int parallel) {
  if (series < 1 || parallel < 1)
    throw InputDomainError("array series and parallel counts must be at least 1");
  panel.validate();
  ArraySpec a;
  a.panel = panel;
  a.series_count = series;
  a.parallel_count = parallel;
  a.v_nominal = series * panel.v_mp;
  a.i_nominal = parallel * panel.i_mp;
  a.p_stc = series * parallel * panel.p_max;
  a.total_area_m2 = series * parallel * panel.area_m2;
  return a;
}

void SpeDerate::validate() const {
  if (!(fraction >= 0.0 && fraction < 1.0))
    throw InputDomainError("SPE derate fraction must lie in [0, 1)");
}

double array_power(double ghi, const ArraySpec& array, SpeDerate derate) {
  derate.validate();
  if (!(ghi >= 0.0)) throw InputDomainError("irradiance must be nonnegative");
  const double raw = ghi * array.total_area_m2 * array.panel.efficiency;
  return std::min(raw, array.p_stc) * derate.factor();
}

void ChargeControllerSpec::validate() const {
  if (!(max_charge_current_a > 0.0 && bus_voltage > 0.0))
    throw InputDomainError("charge controller ratings must be positive");
}

PvPowerSplit charge_controller_split(double pv_power, double load_power,
                                     const ChargeControllerSpec& controller,
                                     bool battery_accepting) {
  if (!(pv_power >= 0.0 && load_power >= 0.0))
    throw InputDomainError("PV and load power must be nonnegative");
  PvPowerSplit split;
  split.to_load = std::min(pv_power, load_power);
  const double surplus = pv_power - split.to_load;
  split.to_battery = battery_accepting ? std::min(surplus, controller.max_charge_power()) : 0.0;
  split.curtailed = surplus - split.to_battery;
  return split;
}

}  // namespace zem
