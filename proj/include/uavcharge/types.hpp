#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uavcharge {

enum class UavId : std::uint32_t {};
enum class UgvId : std::uint32_t {};
enum class WindowId : std::uint32_t {};

constexpr std::uint32_t raw(UavId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t raw(UgvId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t raw(WindowId id) { return static_cast<std::uint32_t>(id); }

/// Joules per watt-hour.
inline constexpr double kJoulesPerWh = 3600.0;
/// Gravitational acceleration used by the power model (m/s^2).
inline constexpr double kGravity = 9.8;

struct Vec2 {
  double x = 0;
  double y = 0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
  double x = 0;
  double y = 0;
  double z = 0;
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double distance(Vec2 a, Vec2 b);

enum class Activity { Flying, Hovering, Descending, Ascending, Charging };

const char* to_string(Activity a);

/// Rotorcraft power coefficients (kappa1..3 for flight/hover, eps1/eps2 for
/// vertical legs).
struct PowerParams {
  double kappa1 = 0.001;
  double kappa2 = 0.005;
  double kappa3 = 0.005;
  double eps1 = 0.5;
  double eps2 = 1.0;
  friend bool operator==(const PowerParams&, const PowerParams&) = default;
};

/// One UAV. Energies are absolute Wh; soc_alert and soc_satisfactory are
/// derived once from fractional config.
struct UavState {
  UavId id{};
  Vec3 position;
  double velocity_max = 0;      // m/s
  double battery_capacity = 0;  // Wh
  double soc = 0;               // Wh
  double soc_alert = 0;         // Wh (s_min)
  double soc_satisfactory = 0;  // Wh (s_sat)
  Activity activity = Activity::Hovering;
  double mass = 0;  // kg
  PowerParams power;
  double discharge_efficiency = 1;  // (0,1]
  double sensing_radius = 0;        // m
  double detection_angle = 0;       // rad
  double altitude_max = 0;          // m
  friend bool operator==(const UavState&, const UavState&) = default;
};

struct UgvState {
  UgvId id{};
  Vec2 position;
  double speed_kmh = 0;
  double supply_capacity = 0;   // Wh
  double supply_remaining = 0;  // Wh
  double transfer_power = 0;    // W
  double transfer_efficiency = 1;
  double qors = 1;
  friend bool operator==(const UgvState&, const UgvState&) = default;
};

struct Bid {
  UavId uav{};
  WindowId window{};
  double amount = 0;
  double submitted_at = 0;  // s
  friend bool operator==(const Bid&, const Bid&) = default;
};

/// One diagnostic produced by a validator: the offending field and the rule
/// it breaks.
struct Violation {
  std::string field;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(const Violation& v);

std::vector<Violation> violations(const UavState& uav);
std::vector<Violation> violations(const UgvState& ugv);
std::vector<Violation> violations(const Bid& bid, double window_start,
                                  double window_length);

/// Builders that reject invariant-violating fields with std::invalid_argument.
UavState make_uav(const UavState& fields);
UgvState make_ugv(const UgvState& fields);
Bid make_bid(const Bid& fields, double window_start, double window_length);

/// One matched (UAV, UGV) pair; rank j is the 1-based position g(j) in the
/// winner order, which is also the rank of the UGV by QoRS.
struct Match {
  std::size_t rank = 0;
  std::size_t bidder = 0;    // index into the market's demand side
  std::size_t supplier = 0;  // index into the market's supply side
  UavId uav{};
  UgvId ugv{};
  double bid = 0;
  double valuation = 0;
  double qors = 0;
  double payment = 0;
  friend bool operator==(const Match&, const Match&) = default;
};

/// Result of clearing one window. Per-agent vectors are indexed by the
/// market's demand/supply order, not by agent id.
struct AuctionOutcome {
  WindowId window{};
  std::size_t num_uavs = 0;
  std::size_t num_ugvs = 0;
  std::vector<std::uint8_t> beta;  // row-major num_uavs x num_ugvs
  std::vector<Match> matches;      // g(1) .. g(K)
  std::vector<std::size_t> losers;
  std::vector<double> uav_utilities;
  std::vector<double> ugv_utilities;
  double social_surplus = 0;

  bool assigned(std::size_t uav, std::size_t ugv) const {
    return beta[uav * num_ugvs + ugv] != 0;
  }
  std::size_t winner_count() const { return matches.size(); }
  /// Match held by a bidder, if any.
  const Match* match_of(std::size_t bidder) const;

  friend bool operator==(const AuctionOutcome&, const AuctionOutcome&) = default;
};

/// Checks one-to-one allocation, payment sign rules and |W| = min(I, J).
std::vector<Violation> violations(const AuctionOutcome& outcome);

/// Parameters of one experiment. Defaults: 5 km square area, 8 s windows,
/// mu0=1, mu1=5.
struct ScenarioConfig {
  // geometry (m)
  double area_x = 5000;
  double area_y = 5000;
  double area_z = 10;
  double spot_x = 2500;
  double spot_y = 2500;
  double task_radius = 200;
  double base_station_x = 3000;
  double base_station_y = 3000;
  double base_station_z = 50;

  // UAV fleet
  std::uint32_t uav_count = 10;
  double uav_altitude_min = 5;
  double uav_altitude_max = 10;
  double soc_lower = 0.3;  // fraction of capacity
  double soc_upper = 1.0;
  double battery_capacity = 97.58;  // Wh
  double alert_fraction = 0.2;
  double satisfactory_fraction = 0.9;
  double uav_mass = 2.0;  // kg
  PowerParams power;
  std::optional<double> thrust;  // N; level-flight m*g when unset
  double discharge_efficiency = 0.95;
  double velocity_max = 10;  // m/s
  double descend_speed = 1;  // m/s
  double ascend_speed = 1;   // m/s
  double sensing_radius = 5;
  double detection_angle = 0.7853981633974483;  // rad

  // UGV fleet
  std::uint32_t ugv_count = 10;
  double ugv_distance_min = 300;  // m from the sensing spot
  double ugv_distance_max = 2500;
  double ugv_speed_min = 20;  // km/h
  double ugv_speed_max = 60;
  double ugv_supply = 2000;        // Wh
  double transfer_power = 600;     // W
  double transfer_efficiency = 0.8;

  // timing
  double window_length = 8;  // s (tau)
  double slot_length = 1;    // s (delta_t)
  std::uint32_t horizon_slots = 600;

  // valuation and market
  double mu0 = 1;
  double mu1 = 5;
  double qors_floor = 0.05;
  double participation_threshold = 0.5;  // rho_enter
  std::uint32_t loser_exit_after = 0;    // 0: losers always re-bid

  std::uint64_t seed = 42;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;

  std::uint32_t slots_per_window() const;
  double thrust_or_weight() const;
};

std::vector<Violation> validate(const ScenarioConfig& config);

}  // namespace uavcharge
