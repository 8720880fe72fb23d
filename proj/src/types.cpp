#include "uavcharge/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace uavcharge {

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

const char* to_string(Activity a) {
  switch (a) {
    case Activity::Flying:
      return "flying";
    case Activity::Hovering:
      return "hovering";
    case Activity::Descending:
      return "descending";
    case Activity::Ascending:
      return "ascending";
    case Activity::Charging:
      return "charging";
  }
  return "unknown";
}

std::string to_string(const Violation& v) { return v.field + ": " + v.message; }

namespace {

void require(std::vector<Violation>& out, bool ok, const char* field,
             const char* message) {
  if (!ok) out.push_back({field, message});
}

void positive(std::vector<Violation>& out, double value, const char* field) {
  require(out, value > 0 && std::isfinite(value), field,
          "must be strictly positive");
}

void fraction(std::vector<Violation>& out, double value, const char* field) {
  require(out, value > 0 && value <= 1, field, "must lie in (0, 1]");
}

template <typename T>
T checked(const T& fields, const std::vector<Violation>& found) {
  if (!found.empty()) {
    std::string msg = "invalid fields:";
    for (const auto& v : found) msg += " [" + to_string(v) + "]";
    throw std::invalid_argument(msg);
  }
  return fields;
}

}  // namespace

std::vector<Violation> violations(const UavState& u) {
  std::vector<Violation> out;
  positive(out, u.velocity_max, "velocity_max");
  positive(out, u.battery_capacity, "battery_capacity");
  positive(out, u.mass, "mass");
  fraction(out, u.discharge_efficiency, "discharge_efficiency");
  require(out, u.soc_alert >= 0, "soc_alert", "must be nonnegative");
  require(out, u.soc_alert <= u.soc, "soc", "below the alert level");
  require(out, u.soc <= u.battery_capacity, "soc", "exceeds battery capacity");
  require(out, u.soc_alert < u.soc_satisfactory, "soc_satisfactory",
          "must exceed the alert level");
  require(out, u.soc_satisfactory <= u.battery_capacity, "soc_satisfactory",
          "exceeds battery capacity");
  require(out, u.sensing_radius >= 0, "sensing_radius", "must be nonnegative");
  require(out,
          u.detection_angle > 0 && u.detection_angle < std::numbers::pi / 2,
          "detection_angle", "must lie in (0, pi/2)");
  positive(out, u.altitude_max, "altitude_max");
  require(out, u.power.eps2 > 0, "eps2", "must be strictly positive");
  return out;
}

std::vector<Violation> violations(const UgvState& g) {
  std::vector<Violation> out;
  positive(out, g.speed_kmh, "speed_kmh");
  require(out, g.supply_capacity >= 0, "supply_capacity", "must be nonnegative");
  require(out, g.supply_remaining >= 0, "supply_remaining",
          "must be nonnegative");
  require(out, g.supply_remaining <= g.supply_capacity, "supply_remaining",
          "exceeds supply capacity");
  positive(out, g.transfer_power, "transfer_power");
  fraction(out, g.transfer_efficiency, "transfer_efficiency");
  fraction(out, g.qors, "qors");
  return out;
}

std::vector<Violation> violations(const Bid& b, double window_start,
                                  double window_length) {
  std::vector<Violation> out;
  require(out, b.amount >= 0 && std::isfinite(b.amount), "amount",
          "must be nonnegative");
  require(out,
          b.submitted_at >= window_start &&
              b.submitted_at < window_start + window_length,
          "submitted_at", "outside the auction window");
  return out;
}

UavState make_uav(const UavState& fields) {
  return checked(fields, violations(fields));
}

UgvState make_ugv(const UgvState& fields) {
  return checked(fields, violations(fields));
}

Bid make_bid(const Bid& fields, double window_start, double window_length) {
  return checked(fields, violations(fields, window_start, window_length));
}

const Match* AuctionOutcome::match_of(std::size_t bidder) const {
  for (const auto& m : matches)
    if (m.bidder == bidder) return &m;
  return nullptr;
}

std::vector<Violation> violations(const AuctionOutcome& o) {
  std::vector<Violation> out;
  if (o.beta.size() != o.num_uavs * o.num_ugvs) {
    out.push_back({"beta", "shape does not match market size"});
    return out;
  }
  for (std::size_t i = 0; i < o.num_uavs; ++i) {
    int row = 0;
    for (std::size_t j = 0; j < o.num_ugvs; ++j) row += o.assigned(i, j);
    if (row > 1) out.push_back({"beta", "a UAV holds more than one charger"});
  }
  for (std::size_t j = 0; j < o.num_ugvs; ++j) {
    int col = 0;
    for (std::size_t i = 0; i < o.num_uavs; ++i) col += o.assigned(i, j);
    if (col > 1) out.push_back({"beta", "a charger serves more than one UAV"});
  }
  for (const auto& m : o.matches) {
    if (!(m.payment >= 0)) out.push_back({"payments", "winner payment is negative"});
    if (m.bidder >= o.num_uavs || m.supplier >= o.num_ugvs ||
        !o.assigned(m.bidder, m.supplier))
      out.push_back({"matches", "match not reflected in beta"});
  }
  if (o.matches.size() != std::min(o.num_uavs, o.num_ugvs))
    out.push_back({"matches", "winner count differs from min(I, J)"});
  return out;
}

std::uint32_t ScenarioConfig::slots_per_window() const {
  return static_cast<std::uint32_t>(std::llround(window_length / slot_length));
}

double ScenarioConfig::thrust_or_weight() const {
  return thrust.value_or(uav_mass * kGravity);
}

std::vector<Violation> validate(const ScenarioConfig& c) {
  std::vector<Violation> out;
  for (auto [value, field] : {std::pair{c.area_x, "area_x"},
                              {c.area_y, "area_y"},
                              {c.area_z, "area_z"},
                              {c.task_radius, "task_radius"},
                              {c.uav_altitude_min, "uav_altitude_min"},
                              {c.uav_altitude_max, "uav_altitude_max"},
                              {c.battery_capacity, "battery_capacity"},
                              {c.uav_mass, "uav_mass"},
                              {c.velocity_max, "velocity_max"},
                              {c.descend_speed, "descend_speed"},
                              {c.ascend_speed, "ascend_speed"},
                              {c.sensing_radius, "sensing_radius"},
                              {c.ugv_distance_min, "ugv_distance_min"},
                              {c.ugv_distance_max, "ugv_distance_max"},
                              {c.ugv_speed_min, "ugv_speed_min"},
                              {c.ugv_speed_max, "ugv_speed_max"},
                              {c.ugv_supply, "ugv_supply"},
                              {c.transfer_power, "transfer_power"},
                              {c.power.eps2, "eps2"}})
    positive(out, value, field);

  require(out, c.window_length > 0, "window_length",
          "window length must be positive");
  require(out, c.slot_length > 0, "slot_length", "slot length must be positive");
  if (c.window_length > 0 && c.slot_length > 0) {
    double ratio = c.window_length / c.slot_length;
    require(out, std::abs(ratio - std::round(ratio)) < 1e-9, "window_length",
            "window length must be a multiple of the slot length");
  }
  require(out, c.horizon_slots > 0, "horizon_slots", "horizon must be positive");

  require(out, c.soc_lower >= 0 && c.soc_lower <= 1, "soc_lower",
          "SoC bound outside [0, 1]");
  require(out, c.soc_upper >= 0 && c.soc_upper <= 1, "soc_upper",
          "SoC bound outside [0, 1]");
  require(out, c.soc_lower <= c.soc_upper, "soc_lower",
          "SoC lower bound exceeds upper");
  require(out, c.alert_fraction >= 0 && c.alert_fraction < 1, "alert_fraction",
          "alert level outside [0, 1)");
  require(out,
          c.satisfactory_fraction > c.alert_fraction &&
              c.satisfactory_fraction <= 1,
          "satisfactory_fraction", "must lie in (alert_fraction, 1]");
  require(out, c.soc_lower >= c.alert_fraction, "soc_lower",
          "initial SoC may start below the alert level");

  require(out, c.uav_altitude_min <= c.uav_altitude_max, "uav_altitude_min",
          "altitude lower bound exceeds upper");
  require(out, c.uav_altitude_max <= c.area_z, "uav_altitude_max",
          "altitude exceeds the area height");
  require(out, c.ugv_distance_min <= c.ugv_distance_max, "ugv_distance_min",
          "distance lower bound exceeds upper");
  require(out, c.ugv_distance_min >= c.task_radius, "ugv_distance_min",
          "UGVs must start outside the task area");
  require(out, c.ugv_speed_min <= c.ugv_speed_max, "ugv_speed_min",
          "speed lower bound exceeds upper");
  require(out,
          c.detection_angle > 0 && c.detection_angle < std::numbers::pi / 2,
          "detection_angle", "must lie in (0, pi/2)");
  require(out,
          c.sensing_radius / std::tan(c.detection_angle) <=
              c.uav_altitude_min * (1 + 1e-12),
          "uav_altitude_min", "below the sensing altitude bound R*cot(theta)");

  fraction(out, c.discharge_efficiency, "discharge_efficiency");
  fraction(out, c.transfer_efficiency, "transfer_efficiency");
  require(out, c.power.kappa1 >= 0 && c.power.kappa2 >= 0 &&
                   c.power.kappa3 >= 0 && c.power.eps1 >= 0,
          "power", "coefficients must be nonnegative");
  if (c.thrust) positive(out, *c.thrust, "thrust");

  require(out, c.mu0 > 0, "mu0", "must be strictly positive");
  require(out, c.mu1 >= 0, "mu1", "must be nonnegative");
  require(out, c.qors_floor > 0 && c.qors_floor < 1, "qors_floor",
          "must lie in (0, 1)");
  require(out,
          c.participation_threshold >= 0 && c.participation_threshold <= 1,
          "participation_threshold", "must lie in [0, 1]");

  require(out, c.spot_x >= 0 && c.spot_x <= c.area_x && c.spot_y >= 0 &&
                   c.spot_y <= c.area_y,
          "spot", "sensing spot outside the area");
  return out;
}

}  // namespace uavcharge
