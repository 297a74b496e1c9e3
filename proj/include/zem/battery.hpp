#pragma once

#include <optional>
#include <string_view>

namespace zem {

enum class Chemistry { lead_acid, silicone };

std::string_view to_string(Chemistry c);
Chemistry parse_chemistry(std::string_view text);  ///< throws InputDomainError

/// Peukert exponent that makes a battery rated `rated_ah` at `rated_current`
/// deliver `measured_ah` at `measured_current`.
double calibrate_peukert(double rated_ah, double rated_current, double measured_ah,
                         double measured_current);

struct BatterySpec {
  Chemistry chemistry = Chemistry::silicone;
  double v_nominal = 12.0;
  double rated_ah = 70.0;
  double rated_current = 3.5;
  double peukert_k = 1.0;
  std::optional<double> mass_kg;
  double min_soc = 0.2;
  double charge_efficiency = 1.0;

  void validate() const;
  bool operator==(const BatterySpec&) const = default;
};

/// Stinger SPV35 AGM: 35 Ah at 1.75 A, 21 Ah effective at 12 A.
BatterySpec lead_acid_reference();
/// 12 V 70 Ah silicone unit: 43.8 Ah effective at 12 A; rated current is the
/// 20-hour rate since the manufacturer rate is unknown.
BatterySpec silicone_reference();

struct BatteryState {
  double soc = 1.0;
  double delivered_ah = 0.0;
  double delivered_wh = 0.0;
  double accepted_wh = 0.0;  ///< charging energy taken from the bus
  double terminal_voltage = 0.0;

  bool operator==(const BatteryState&) const = default;
};

BatteryState fresh_state(const BatterySpec& spec, double soc = 1.0);

/// Peukert capacity over the [min_soc, 1] window at a constant current.
double effective_ah(const BatterySpec& spec, double current);
/// Full-range (0..1 SoC) capacity at `current`: effective_ah / (1 - min_soc).
double full_range_ah(const BatterySpec& spec, double current);

BatteryState discharge_step(const BatteryState& state, const BatterySpec& spec, double current,
                            double dt_s);
/// Charging stops at full; the part of `power_w` that did not fit is not
/// counted in accepted_wh.
BatteryState charge_step(const BatteryState& state, const BatterySpec& spec, double power_w,
                         double dt_s);

/// Constant current that brings `state` down to exactly `floor_soc` over
/// `dt_s` (Peukert capacity at that same current). Zero at or below the floor.
double current_to_floor(const BatteryState& state, const BatterySpec& spec, double floor_soc,
                        double dt_s);
/// Largest charging power that `state` can absorb over `dt_s` without
/// passing full.
double charge_headroom_w(const BatteryState& state, const BatterySpec& spec, double dt_s);
double energy_density(double delivered_wh, double mass_kg);

struct BankConfig {
  BatterySpec battery;
  int series_count = 4;
  int parallel_count = 2;
  std::optional<int> total_count;

  bool operator==(const BankConfig&) const = default;
};

struct BankAggregate {
  double voltage = 0.0;
  double capacity_ah = 0.0;
  double energy_wh = 0.0;
};

BankAggregate bank_aggregate(const BankConfig& config);

/// The bank as one battery: series voltage, parallel capacity and rated
/// current, same Peukert exponent.
BatterySpec bank_equivalent(const BankConfig& config);

}  // namespace zem
