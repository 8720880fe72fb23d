#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavcharge/audit.hpp"
#include "uavcharge/baselines.hpp"
#include "uavcharge/energy.hpp"
#include "uavcharge/mechanism.hpp"
#include "uavcharge/types.hpp"

namespace uavcharge::sim {

/// Which clearing rule closes each window.
enum class Scheme { Ours, Optimal, Static };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

enum class UavPhase {
  Mission,       // hovering over its sensing spot (bidding or not)
  ToRendezvous,  // horizontal flight to the charging point
  AwaitCharger,  // hovering above the rendezvous until the UGV arrives
  Descending,
  Charging,
  Ascending,
  Returning,  // horizontal flight back to the sensing spot
  Retired,    // left for a static station after repeated losses
};

enum class UgvPhase { Idle, EnRoute, Hosting, Returning };

struct UavAgent {
  UavState state;
  UavPhase phase = UavPhase::Mission;
  Vec2 post;    // mission position
  Vec2 target;  // current horizontal destination
  double mission_altitude = 0;
  double leg_remaining = 0;     // m for flights and vertical legs, s for charging
  std::optional<std::size_t> partner;
  std::uint32_t failed_windows = 0;
  bool queued = false;
};

struct UgvAgent {
  UgvState state;
  UgvPhase phase = UgvPhase::Idle;
  Vec2 home;
  Vec2 target;
  std::optional<std::size_t> partner;
  double delivered = 0;  // Wh leaving the pad towards UAV receivers
  double drawn = 0;      // Wh taken from the supply
};

/// A UAV waiting for the current window to close.
struct QueueEntry {
  std::size_t uav = 0;
  double submitted_at = 0;
  std::vector<double> urgency_samples;
  std::vector<double> valuation_samples;
};

/// Per-window summary. surplus == uav_utility + ugv_utility up to rounding.
struct MetricsRow {
  std::string scheme;
  std::uint32_t ugvs = 0;  // J of the scenario
  double tau = 0;
  std::uint64_t seed = 0;
  std::uint32_t window = 0;
  double satisfaction = 0;
  double uav_utility = 0;
  double ugv_utility = 0;
  double surplus = 0;
  double non_envy_ratio = 1;
  std::uint32_t winners = 0;
  std::uint32_t bidders = 0;
};

struct WindowRecord {
  mechanism::WindowMarket market;
  AuctionOutcome outcome;
  MetricsRow metrics;
  std::optional<audit::AuditReport> audit;
};

struct SimOptions {
  Scheme scheme = Scheme::Ours;
  std::size_t max_exhaustive_pairs = baselines::kDefaultMaxPairs;
  bool audit = false;
  bool keep_markets = false;  // store market and outcome in each record
};

struct World {
  ScenarioConfig config;
  SimOptions options;
  std::uint64_t seed = 0;
  std::uint64_t clock = 0;  // slots elapsed
  std::vector<UavAgent> uavs;
  std::vector<UgvAgent> ugvs;
  std::vector<baselines::StaticCharger> static_chargers;
  Vec2 spot;
  double task_radius = 0;
  Vec3 base_station;
  energy::PowerBreakdown powers;
  std::vector<QueueEntry> pending;
  std::uint32_t next_window = 0;
  std::vector<WindowRecord> completed;
  std::mt19937_64 rng;

  double now() const { return static_cast<double>(clock) * config.slot_length; }
  /// Largest UAV flight to a rendezvous; normalizes QoRS distances.
  double reach() const { return config.ugv_distance_max / 2.0; }
};

/// Builds the initial world. UAV and UGV draws come from separate streams
/// of `seed`, so scenarios that differ only in UGV count share their UAVs
/// and the common prefix of their UGVs. Throws std::invalid_argument for an
/// invalid config.
World generate_scenario(const ScenarioConfig& config, std::uint64_t seed,
                        SimOptions options = {});

/// Midpoint of the sensing spot and the UGV.
Vec2 rendezvous(Vec2 spot, Vec2 ugv);

/// SL = sum over matches of q_j * mean urgency of the winner.
double satisfaction_level(const AuctionOutcome& outcome,
                          std::span<const double> mean_urgency);

/// One slot: enqueue UAVs whose urgency reached the participation
/// threshold, sample queued UAVs' urgency and valuation, then move agents and
/// step every battery.
void advance_slot(World& world);

/// Clears the pending window: builds the market from queued UAVs and idle
/// chargers, runs the scheme, dispatches winners and re-queues losers.
/// Throws baselines::CapacityError when the exhaustive guard trips.
const WindowRecord& close_window(World& world);

/// advance_slot until the horizon, closing a window every tau / dt slots.
void run(World& world);

/// Per-window metrics of one full run.
std::vector<MetricsRow> simulate(const ScenarioConfig& config,
                                 std::uint64_t seed, SimOptions options = {});

/// A single truthful market with I UAVs and J UGVs drawn like the
/// scenario's initial state (urgency from the SoC band, QoRS from distance).
/// `coarse` snaps valuations to multiples of 0.5 and QoRS to multiples of
/// 0.1 so that ties are common.
mechanism::WindowMarket random_market(const ScenarioConfig& config,
                                      std::uint64_t seed, std::size_t uavs,
                                      std::size_t ugvs, bool coarse = false);

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const MetricsRow& row);

}  // namespace uavcharge::sim
