#pragma once

namespace zem {

inline constexpr double kStcIrradiance = 1000.0;  // W/m2

/// Module area implied by an STC rating: p_max / (efficiency * 1000 W/m2).
double panel_area_from_stc(double p_max_w, double efficiency);

struct PanelSpec {
  double v_mp = 40.0;
  double i_mp = 5.1;
  double p_max = 205.0;
  double efficiency = 0.165;
  double area_m2 = 1.244;  ///< gross module area

  /// Panel with the area derived from its STC rating.
  static PanelSpec from_stc(double v_mp, double i_mp, double p_max, double efficiency);
  void validate() const;
  bool operator==(const PanelSpec&) const = default;
};

struct ArraySpec {
  PanelSpec panel;
  int series_count = 1;
  int parallel_count = 1;
  double v_nominal = 0.0;
  double i_nominal = 0.0;
  double p_stc = 0.0;
  double total_area_m2 = 0.0;

  bool operator==(const ArraySpec&) const = default;
};

ArraySpec wire_array(const PanelSpec& panel, int series, int parallel);

/// Surface polarization derate, a constant output fraction lost per run.
struct SpeDerate {
  double fraction = 0.0;

  void validate() const;
  double factor() const { return 1.0 - fraction; }
  bool operator==(const SpeDerate&) const = default;
};

/// ghi * area * efficiency * (1 - derate), clamped to the STC rating.
double array_power(double ghi, const ArraySpec& array, SpeDerate derate = {});

struct ChargeControllerSpec {
  double max_charge_current_a = 45.0;
  double bus_voltage = 48.0;

  void validate() const;
  double max_charge_power() const { return max_charge_current_a * bus_voltage; }
  bool operator==(const ChargeControllerSpec&) const = default;
};

struct PvPowerSplit {
  double to_load = 0.0;
  double to_battery = 0.0;
  double curtailed = 0.0;
};

/// PV serves the load first; surplus charges the battery up to the
/// controller's current rating, the rest is curtailed.
PvPowerSplit charge_controller_split(double pv_power, double load_power,
                                     const ChargeControllerSpec& controller,
                                     bool battery_accepting);

}  // namespace zem
