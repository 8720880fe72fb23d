#include "uavcharge/config_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace uavcharge {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("config key '" + std::string(key) +
                      "': not a number: '" + std::string(text) + "'");
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("config key '" + std::string(key) +
                      "': not a nonnegative integer: '" + std::string(text) +
                      "'");
  return v;
}

struct Field {
  const char* key;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, std::string_view)> set;
};

Field real(const char* key, double ScenarioConfig::*member) {
  return {key, [member](const ScenarioConfig& c) { return format_double(c.*member); },
          [key, member](ScenarioConfig& c, std::string_view v) {
            c.*member = parse_double(key, v);
          }};
}

Field power(const char* key, double PowerParams::*member) {
  return {key,
          [member](const ScenarioConfig& c) { return format_double(c.power.*member); },
          [key, member](ScenarioConfig& c, std::string_view v) {
            c.power.*member = parse_double(key, v);
          }};
}

Field count(const char* key, std::uint32_t ScenarioConfig::*member) {
  return {key, [member](const ScenarioConfig& c) { return std::to_string(c.*member); },
          [key, member](ScenarioConfig& c, std::string_view v) {
            auto n = parse_unsigned(key, v);
            if (n > UINT32_MAX) throw ConfigError(std::string("config key '") + key + "': out of range");
            c.*member = static_cast<std::uint32_t>(n);
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      real("area_x", &ScenarioConfig::area_x),
      real("area_y", &ScenarioConfig::area_y),
      real("area_z", &ScenarioConfig::area_z),
      real("spot_x", &ScenarioConfig::spot_x),
      real("spot_y", &ScenarioConfig::spot_y),
      real("task_radius", &ScenarioConfig::task_radius),
      real("base_station_x", &ScenarioConfig::base_station_x),
      real("base_station_y", &ScenarioConfig::base_station_y),
      real("base_station_z", &ScenarioConfig::base_station_z),
      count("uav_count", &ScenarioConfig::uav_count),
      real("uav_altitude_min", &ScenarioConfig::uav_altitude_min),
      real("uav_altitude_max", &ScenarioConfig::uav_altitude_max),
      real("soc_lower", &ScenarioConfig::soc_lower),
      real("soc_upper", &ScenarioConfig::soc_upper),
      real("battery_capacity", &ScenarioConfig::battery_capacity),
      real("alert_fraction", &ScenarioConfig::alert_fraction),
      real("satisfactory_fraction", &ScenarioConfig::satisfactory_fraction),
      real("uav_mass", &ScenarioConfig::uav_mass),
      power("kappa1", &PowerParams::kappa1),
      power("kappa2", &PowerParams::kappa2),
      power("kappa3", &PowerParams::kappa3),
      power("eps1", &PowerParams::eps1),
      power("eps2", &PowerParams::eps2),
      {"thrust",
       [](const ScenarioConfig& c) {
         return c.thrust ? format_double(*c.thrust) : std::string("auto");
       },
       [](ScenarioConfig& c, std::string_view v) {
         if (v == "auto")
           c.thrust.reset();
         else
           c.thrust = parse_double("thrust", v);
       }},
      real("discharge_efficiency", &ScenarioConfig::discharge_efficiency),
      real("velocity_max", &ScenarioConfig::velocity_max),
      real("descend_speed", &ScenarioConfig::descend_speed),
      real("ascend_speed", &ScenarioConfig::ascend_speed),
      real("sensing_radius", &ScenarioConfig::sensing_radius),
      real("detection_angle", &ScenarioConfig::detection_angle),
      count("ugv_count", &ScenarioConfig::ugv_count),
      real("ugv_distance_min", &ScenarioConfig::ugv_distance_min),
      real("ugv_distance_max", &ScenarioConfig::ugv_distance_max),
      real("ugv_speed_min", &ScenarioConfig::ugv_speed_min),
      real("ugv_speed_max", &ScenarioConfig::ugv_speed_max),
      real("ugv_supply", &ScenarioConfig::ugv_supply),
      real("transfer_power", &ScenarioConfig::transfer_power),
      real("transfer_efficiency", &ScenarioConfig::transfer_efficiency),
      real("window_length", &ScenarioConfig::window_length),
      real("slot_length", &ScenarioConfig::slot_length),
      count("horizon_slots", &ScenarioConfig::horizon_slots),
      real("mu0", &ScenarioConfig::mu0),
      real("mu1", &ScenarioConfig::mu1),
      real("qors_floor", &ScenarioConfig::qors_floor),
      real("participation_threshold", &ScenarioConfig::participation_threshold),
      count("loser_exit_after", &ScenarioConfig::loser_exit_after),
      {"seed", [](const ScenarioConfig& c) { return std::to_string(c.seed); },
       [](ScenarioConfig& c, std::string_view v) {
         c.seed = parse_unsigned("seed", v);
       }},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));

    bool known = false;
    for (const auto& f : fields()) {
      if (key == f.key) {
        f.set(config, value);
        known = true;
        break;
      }
    }
    if (!known)
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
  }
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const ScenarioConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(config);
    out += '\n';
  }
  return out;
}

std::uint64_t config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : format_config(config)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace uavcharge
