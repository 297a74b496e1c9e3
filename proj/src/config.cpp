#include "zem/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include "zem/errors.hpp"
#include "zem/units.hpp"

namespace zem {
namespace {

using NumberList = std::vector<double>;
using Value = std::variant<double, bool, std::string, NumberList>;

struct Entry {
  std::string key;
  Value value;
  int line = 0;
};

struct Table {
  std::string name;
  bool array_item = false;
  int line = 0;
  std::vector<Entry> entries;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::optional<Value> parse_value(const std::string& text) {
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    const std::string inner = text.substr(1, text.size() - 2);
    if (inner.find('"') != std::string::npos) return std::nullopt;
    return inner;
  }
  if (text == "true") return true;
  if (text == "false") return false;
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
    NumberList list;
    std::stringstream items(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(items, item, ',')) {
      const std::string t = trim(item);
      if (t.empty()) continue;
      auto v = parse_number(t);
      if (!v) return std::nullopt;
      list.push_back(*v);
    }
    return list;
  }
  if (auto v = parse_number(text)) return *v;
  return std::nullopt;
}

std::vector<Table> tokenize(std::string_view text, Violations& errors) {
  std::vector<Table> tables(1);  // leading keys outside any section
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::string at = "line " + std::to_string(number) + ": ";
    if (line.starts_with("[[")) {
      if (!line.ends_with("]]")) {
        errors.add(at + "malformed table header");
        continue;
      }
      tables.push_back({trim(line.substr(2, line.size() - 4)), true, number, {}});
    } else if (line.front() == '[') {
      if (line.back() != ']') {
        errors.add(at + "malformed section header");
        continue;
      }
      tables.push_back({trim(line.substr(1, line.size() - 2)), false, number, {}});
    } else {
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        errors.add(at + "expected key = value");
        continue;
      }
      const std::string key = trim(line.substr(0, eq));
      auto value = parse_value(trim(line.substr(eq + 1)));
      if (key.empty() || !value) {
        errors.add(at + "cannot parse value for '" + key + "'");
        continue;
      }
      tables.back().entries.push_back({key, std::move(*value), number});
    }
  }
  return tables;
}

// --- field descriptors ----------------------------------------------------

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quote(std::string_view s) { return "\"" + std::string(s) + "\""; }

/// Decimal mph value that converts back to exactly `mps`.
double mph_repr(double mps) {
  double m = mps / kMphToMps;
  for (double c : {m, std::nextafter(m, 0.0), std::nextafter(m, 1e300),
                   std::nextafter(std::nextafter(m, 0.0), 0.0),
                   std::nextafter(std::nextafter(m, 1e300), 1e300)}) {
    if (c * kMphToMps == mps) return c;
  }
  return m;
}

template <class Target>
struct Field {
  std::string key;
  std::function<std::string(Target&, const Value&)> set;  // returns an error or ""
  std::function<std::optional<std::string>(const Target&)> get;  // nullopt = omitted
};

template <class Target, class F>
Field<Target> number(std::string key, F access) {
  return {key,
          [access](Target& t, const Value& v) -> std::string {
            if (!std::holds_alternative<double>(v)) return "expected a number";
            access(t) = std::get<double>(v);
            return {};
          },
          [access](const Target& t) -> std::optional<std::string> { return fmt(access(t)); }};
}

template <class Target, class F>
Field<Target> mph(std::string key, F access) {
  return {key,
          [access](Target& t, const Value& v) -> std::string {
            if (!std::holds_alternative<double>(v)) return "expected a number";
            access(t) = mph_to_mps(std::get<double>(v));
            return {};
          },
          [access](const Target& t) -> std::optional<std::string> {
            return fmt(mph_repr(access(t)));
          }};
}

template <class Target, class F>
Field<Target> optional_mph(std::string key, F access) {
  return {key,
          [access](Target& t, const Value& v) -> std::string {
            if (!std::holds_alternative<double>(v)) return "expected a number";
            access(t) = mph_to_mps(std::get<double>(v));
            return {};
          },
          [access](const Target& t) -> std::optional<std::string> {
            if (!access(t)) return std::nullopt;
            return fmt(mph_repr(*access(t)));
          }};
}

template <class Target, class F>
Field<Target> optional_number(std::string key, F access) {
  return {key,
          [access](Target& t, const Value& v) -> std::string {
            if (const auto* s = std::get_if<std::string>(&v); s && *s == "unknown") {
              access(t).reset();
              return {};
            }
            if (!std::holds_alternative<double>(v)) return "expected a number or \"unknown\"";
            access(t) = std::get<double>(v);
            return {};
          },
          [access](const Target& t) -> std::optional<std::string> {
            if (!access(t)) return std::string("\"unknown\"");
            return fmt(*access(t));
          }};
}

template <class Target, class F>
Field<Target> integer(std::string key, F access) {
  return {key,
          [access](Target& t, const Value& v) -> std::string {
            if (!std::holds_alternative<double>(v)) return "expected an integer";
            const double d = std::get<double>(v);
            if (d != std::trunc(d) || std::abs(d) > 1e6) return "expected an integer";
            access(t) = static_cast<int>(d);
            return {};
          },
          [access](const Target& t) -> std::optional<std::string> {
            return std::to_string(access(t));
          }};
}

template <class Target, class F>
Field<Target> optional_integer(std::string key, F access) {
  return {key,
          [access](Target& t, const Value& v) -> std::string {
            if (const auto* s = std::get_if<std::string>(&v); s && *s == "unknown") {
              access(t).reset();
              return {};
            }
            if (!std::holds_alternative<double>(v)) return "expected an integer or \"unknown\"";
            const double d = std::get<double>(v);
            if (d != std::trunc(d) || std::abs(d) > 1e6) return "expected an integer";
            access(t) = static_cast<int>(d);
            return {};
          },
          [access](const Target& t) -> std::optional<std::string> {
            if (!access(t)) return std::string("\"unknown\"");
            return std::to_string(*access(t));
          }};
}

template <class Target, class F>
Field<Target> boolean(std::string key, F access) {
  return {key,
          [access](Target& t, const Value& v) -> std::string {
            if (!std::holds_alternative<bool>(v)) return "expected true or false";
            access(t) = std::get<bool>(v);
            return {};
          },
          [access](const Target& t) -> std::optional<std::string> {
            return access(t) ? "true" : "false";
          }};
}

/// String-valued field converted with parse/format functions that throw
/// InputDomainError on bad input.
template <class Target, class F, class Parse, class Format>
Field<Target> text(std::string key, F access, Parse parse, Format format) {
  return {key,
          [access, parse](Target& t, const Value& v) -> std::string {
            if (!std::holds_alternative<std::string>(v)) return "expected a quoted string";
            try {
              access(t) = parse(std::get<std::string>(v));
            } catch (const InputDomainError& e) {
              return e.what();
            }
            return {};
          },
          [access, format](const Target& t) -> std::optional<std::string> {
            return quote(format(access(t)));
          }};
}

using ConfigField = Field<RunConfig>;
using SegmentField = Field<Segment>;

#define ACCESS(expr) [](auto& c) -> auto& { return c.expr; }

std::vector<std::pair<std::string, std::vector<ConfigField>>> sections() {
  auto parse_dir = [](const std::string& s) { return parse_direction(s); };
  auto fmt_dir = [](Direction d) { return std::string(to_string(d)); };
  auto parse_chem = [](const std::string& s) { return parse_chemistry(s); };
  auto fmt_chem = [](Chemistry c) { return std::string(to_string(c)); };
  auto parse_clk = [](const std::string& s) { return parse_clock(s); };
  auto fmt_clk = [](ClockTime t) { return format_clock(t); };
  auto parse_dt = [](const std::string& s) { return parse_date(s); };
  auto fmt_dt = [](CivilDate d) { return format_date(d); };

  ConfigField derates{
      "derates",
      [](RunConfig& c, const Value& v) -> std::string {
        if (!std::holds_alternative<NumberList>(v)) return "expected a list of numbers";
        c.derates = std::get<NumberList>(v);
        return {};
      },
      [](const RunConfig& c) -> std::optional<std::string> {
        std::string s = "[";
        for (std::size_t i = 0; i < c.derates.size(); ++i) s += (i ? ", " : "") + fmt(c.derates[i]);
        return s + "]";
      }};

  return {
      {"site",
       {number<RunConfig>("latitude_deg", ACCESS(scenario.site.location.latitude_deg)),
        number<RunConfig>("longitude_deg", ACCESS(scenario.site.location.longitude_deg)),
        number<RunConfig>("utc_offset_h", ACCESS(scenario.site.location.utc_offset_h)),
        text<RunConfig>("date", ACCESS(scenario.site.date), parse_dt, fmt_dt)}},
      {"atmosphere",
       {number<RunConfig>("pressure_mb", ACCESS(scenario.site.atmosphere.surface_pressure_mb)),
        number<RunConfig>("ozone_atm_cm", ACCESS(scenario.site.atmosphere.ozone_atm_cm)),
        number<RunConfig>("precipitable_water_cm", ACCESS(scenario.site.atmosphere.precipitable_water_cm)),
        number<RunConfig>("aod_500nm", ACCESS(scenario.site.atmosphere.aod_500nm)),
        number<RunConfig>("aod_380nm", ACCESS(scenario.site.atmosphere.aod_380nm)),
        number<RunConfig>("forward_scatter", ACCESS(scenario.site.atmosphere.forward_scatter)),
        number<RunConfig>("ground_albedo", ACCESS(scenario.site.atmosphere.ground_albedo))}},
      {"solar",
       {text<RunConfig>("window_start", ACCESS(window_start), parse_clk, fmt_clk),
        text<RunConfig>("window_end", ACCESS(window_end), parse_clk, fmt_clk),
        number<RunConfig>("step_s", ACCESS(profile_step_s)), derates}},
      {"array",
       {number<RunConfig>("panel_v_mp_v", ACCESS(scenario.array.panel.v_mp)),
        number<RunConfig>("panel_i_mp_a", ACCESS(scenario.array.panel.i_mp)),
        number<RunConfig>("panel_p_max_w", ACCESS(scenario.array.panel.p_max)),
        number<RunConfig>("panel_efficiency", ACCESS(scenario.array.panel.efficiency)),
        number<RunConfig>("panel_area_m2", ACCESS(scenario.array.panel.area_m2)),
        integer<RunConfig>("series", ACCESS(scenario.array.series_count)),
        integer<RunConfig>("parallel", ACCESS(scenario.array.parallel_count)),
        number<RunConfig>("spe_derate", ACCESS(scenario.derate.fraction))}},
      {"charge_controller",
       {number<RunConfig>("max_charge_current_a", ACCESS(scenario.charge_controller.max_charge_current_a)),
        number<RunConfig>("bus_voltage_v", ACCESS(scenario.charge_controller.bus_voltage))}},
      {"battery",
       {text<RunConfig>("chemistry", ACCESS(scenario.bank.battery.chemistry), parse_chem, fmt_chem),
        number<RunConfig>("v_nominal_v", ACCESS(scenario.bank.battery.v_nominal)),
        number<RunConfig>("rated_ah", ACCESS(scenario.bank.battery.rated_ah)),
        number<RunConfig>("rated_current_a", ACCESS(scenario.bank.battery.rated_current)),
        number<RunConfig>("peukert_k", ACCESS(scenario.bank.battery.peukert_k)),
        optional_number<RunConfig>("mass_kg", ACCESS(scenario.bank.battery.mass_kg)),
        number<RunConfig>("min_soc", ACCESS(scenario.bank.battery.min_soc)),
        number<RunConfig>("charge_efficiency", ACCESS(scenario.bank.battery.charge_efficiency))}},
      {"bank",
       {integer<RunConfig>("series", ACCESS(scenario.bank.series_count)),
        integer<RunConfig>("parallel", ACCESS(scenario.bank.parallel_count)),
        optional_integer<RunConfig>("count", ACCESS(scenario.bank.total_count))}},
      {"motor",
       {number<RunConfig>("supply_voltage_v", ACCESS(scenario.motor.supply_voltage)),
        number<RunConfig>("max_power_w", ACCESS(scenario.motor.max_power_w)),
        number<RunConfig>("current_limit_a", ACCESS(scenario.motor.current_limit_a)),
        number<RunConfig>("armature_resistance_ohm", ACCESS(scenario.motor.armature_resistance)),
        number<RunConfig>("series_field_constant_nm_per_a2", ACCESS(scenario.motor.series_field_constant)),
        number<RunConfig>("speed_constant_vs_per_rad", ACCESS(scenario.motor.speed_constant))}},
      {"drivetrain",
       {number<RunConfig>("pedal_ratio", ACCESS(scenario.sprockets.pedal_ratio)),
        number<RunConfig>("motor_ratio", ACCESS(scenario.sprockets.motor_ratio)),
        number<RunConfig>("wheel_radius_m", ACCESS(scenario.sprockets.wheel_radius_m))}},
      {"rider",
       {number<RunConfig>("min_cadence_rad_s", ACCESS(scenario.rider.min_cadence)),
        number<RunConfig>("max_cadence_rad_s", ACCESS(scenario.rider.max_cadence)),
        number<RunConfig>("max_torque_nm", ACCESS(scenario.rider.max_torque))}},
      {"vehicle",
       {number<RunConfig>("mass_kg", ACCESS(scenario.vehicle.mass_kg)),
        number<RunConfig>("rolling_resistance", ACCESS(scenario.vehicle.rolling_resistance)),
        number<RunConfig>("drag_area_m2", ACCESS(scenario.vehicle.drag_area_m2)),
        number<RunConfig>("air_density_kg_m3", ACCESS(scenario.vehicle.air_density)),
        number<RunConfig>("gravity_m_s2", ACCESS(scenario.vehicle.gravity))}},
      {"supervisor",
       {mph<RunConfig>("threshold_mph", ACCESS(scenario.supervisor.motor_enable_threshold)),
        boolean<RunConfig>("override", ACCESS(scenario.supervisor.override_enabled))}},
      {"aux",
       {number<RunConfig>("dcdc_rating_w", ACCESS(scenario.aux.dcdc_rating_w)),
        number<RunConfig>("aux_draw_w", ACCESS(scenario.aux.aux_draw_w)),
        number<RunConfig>("dcdc_efficiency", ACCESS(scenario.aux.dcdc_efficiency))}},
      {"sim",
       {number<RunConfig>("timestep_s", ACCESS(scenario.timestep_s)),
        text<RunConfig>("start_time", ACCESS(scenario.start_time), parse_clk, fmt_clk),
        mph<RunConfig>("initial_speed_mph", ACCESS(scenario.initial_speed_mps)),
        text<RunConfig>("initial_direction", ACCESS(scenario.initial_direction), parse_dir, fmt_dir),
        number<RunConfig>("initial_soc", ACCESS(scenario.initial_soc)),
        number<RunConfig>("speed_gain_per_mps", ACCESS(scenario.speed_gain))}},
  };
}

std::vector<SegmentField> segment_fields() {
  auto parse_dir = [](const std::string& s) { return parse_direction(s); };
  auto fmt_dir = [](Direction d) { return std::string(to_string(d)); };
  return {
      number<Segment>("duration_s", ACCESS(duration_s)),
      number<Segment>("grade_rad", ACCESS(grade_rad)),
      text<Segment>("direction", ACCESS(direction), parse_dir, fmt_dir),
      number<Segment>("potentiometer_ohm", ACCESS(potentiometer_ohm)),
      optional_mph<Segment>("target_speed_mph", ACCESS(target_speed_mps)),
      number<Segment>("pedal_power_w", ACCESS(pedal_power_w)),
      number<Segment>("brake_force_n", ACCESS(brake_force_n)),
      boolean<Segment>("sun", ACCESS(sun)),
  };
}

#undef ACCESS

template <class Target>
void apply(Target& target, const Table& table, const std::vector<Field<Target>>& fields,
           Violations& errors) {
  std::map<std::string, int> seen;
  for (const Entry& e : table.entries) {
    const std::string at = "line " + std::to_string(e.line) + ": [" + table.name + "] ";
    if (auto [it, fresh] = seen.emplace(e.key, e.line); !fresh) {
      errors.add(at + "duplicate key '" + e.key + "'");
      continue;
    }
    const Field<Target>* field = nullptr;
    for (const auto& f : fields) {
      if (f.key == e.key) field = &f;
    }
    if (!field) {
      errors.add(at + "unknown key '" + e.key + "'");
      continue;
    }
    if (std::string why = field->set(target, e.value); !why.empty())
      errors.add(at + e.key + ": " + why);
  }
}

}  // namespace

std::vector<std::string> config_violations(const RunConfig& c, bool require_segments) {
  std::vector<std::string> out;
  for (auto& v : scenario_violations(c.scenario)) {
    if (!require_segments && v.starts_with("segments:")) continue;
    out.push_back(std::move(v));
  }
  if (!(c.window_end > c.window_start)) out.emplace_back("solar: window_end must follow window_start");
  if (!(c.window_start.seconds >= 0.0 && c.window_end.seconds <= 86400.0))
    out.emplace_back("solar: window must lie within the day");
  if (!(c.profile_step_s >= 1.0 && c.profile_step_s <= 3600.0))
    out.emplace_back("solar: step_s must lie in [1, 3600]");
  for (double d : c.derates) {
    if (!(d >= 0.0 && d < 1.0)) out.emplace_back("solar: derates must lie in [0, 1)");
  }
  return out;
}

RunConfig parse_config(std::string_view text, bool require_segments) {
  Violations errors;
  const std::vector<Table> tables = tokenize(text, errors);
  RunConfig config;
  config.scenario.segments.clear();

  const auto all = sections();
  const auto seg_fields = segment_fields();

  if (!tables.front().entries.empty())
    errors.add("line " + std::to_string(tables.front().entries.front().line) +
               ": key outside of any section");

  std::map<std::string, int> seen_sections;
  for (std::size_t i = 1; i < tables.size(); ++i) {
    const Table& table = tables[i];
    const std::string at = "line " + std::to_string(table.line) + ": ";
    if (table.array_item) {
      if (table.name != "segment") {
        errors.add(at + "unknown table array [[" + table.name + "]]");
        continue;
      }
      Segment seg;
      apply(seg, table, seg_fields, errors);
      config.scenario.segments.push_back(seg);
      continue;
    }
    if (auto [it, fresh] = seen_sections.emplace(table.name, table.line); !fresh) {
      errors.add(at + "duplicate section [" + table.name + "]");
      continue;
    }
    const std::vector<ConfigField>* fields = nullptr;
    for (const auto& [name, f] : all) {
      if (name == table.name) fields = &f;
    }
    if (!fields) {
      errors.add(at + "unknown section [" + table.name + "]");
      continue;
    }
    if (table.name == "battery") {
      // A chemistry switch starts from that chemistry's reference ratings.
      for (const Entry& e : table.entries) {
        if (e.key != "chemistry" || !std::holds_alternative<std::string>(e.value)) continue;
        try {
          config.scenario.bank.battery = parse_chemistry(std::get<std::string>(e.value)) ==
                                                 Chemistry::lead_acid
                                             ? lead_acid_reference()
                                             : silicone_reference();
        } catch (const InputDomainError&) {
        }
      }
    }
    apply(config, table, *fields, errors);
  }

  if (errors.empty()) {
    const PanelSpec panel = config.scenario.array.panel;
    const int s = config.scenario.array.series_count;
    const int p = config.scenario.array.parallel_count;
    try {
      config.scenario.array = wire_array(panel, s, p);
    } catch (const InputDomainError& e) {
      errors.add(std::string("array: ") + e.what());
      config.scenario.array.panel = panel;
    }
  }
  if (errors.empty()) {
    for (auto& v : config_violations(config, require_segments)) errors.add(std::move(v));
  }
  errors.throw_if_any();
  return config;
}

RunConfig load_config(const std::string& path, bool require_segments) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file '" + path + "'");
  return parse_config(buffer.str(), require_segments);
}

std::string dump_config(const RunConfig& config) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, fields] : sections()) {
    if (!first) out << '\n';
    first = false;
    out << '[' << name << "]\n";
    for (const auto& f : fields) {
      if (auto v = f.get(config)) out << f.key << " = " << *v << '\n';
    }
  }
  const auto seg_fields = segment_fields();
  for (const Segment& seg : config.scenario.segments) {
    out << "\n[[segment]]\n";
    for (const auto& f : seg_fields) {
      if (auto v = f.get(seg)) out << f.key << " = " << *v << '\n';
    }
  }
  return out.str();
}

}  // namespace zem
