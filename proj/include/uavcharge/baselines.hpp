#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "uavcharge/mechanism.hpp"
#include "uavcharge/types.hpp"

namespace uavcharge::baselines {

enum class BaselineKind { ExhaustiveOptimal, StaticWpt };

std::string_view to_string(BaselineKind kind);

/// Raised when a market is too large for exhaustive enumeration.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest min(I, J) the exhaustive search accepts by default.
inline constexpr std::size_t kDefaultMaxPairs = 10;

/// Omniscient planner: enumerates one-to-one assignments of min(I, J) pairs
/// and keeps the one maximizing sum q_j * valuation_i (true valuations, not
/// bids). Branches are cut when an upper bound on the completed surplus
/// cannot beat the incumbent. Payments follow the mechanism's last-winner
/// rule and recursion on the chosen pairs ranked by QoRS.
AuctionOutcome exhaustive_optimal(const mechanism::WindowMarket& market,
                                  std::size_t max_pairs = kDefaultMaxPairs);

/// Number of assignments exhaustive_optimal would visit without pruning.
double assignment_count(std::size_t uavs, std::size_t ugvs);

/// QoRS of a fixed charger. A UAV must fly the whole spot-to-charger
/// distance instead of meeting a UGV halfway, so the distance is not halved;
/// distances beyond `reach` are clamped to the floor.
double static_qors(Vec2 spot, Vec2 charger, double reach, double floor);

/// QoRS of a mobile UGV: the UAV flies only to the midpoint rendezvous.
double mobile_qors(Vec2 spot, Vec2 ugv, double reach, double floor);

/// A fixed charging facility placed at scenario generation.
struct StaticCharger {
  UgvId id{};
  Vec2 position;
  double qors = 0;
};

/// Market over static chargers; their QoRS is fixed at placement.
mechanism::WindowMarket static_market(WindowId window,
                                      std::vector<mechanism::BidderEntry> demand,
                                      std::span<const StaticCharger> chargers);

/// Runs the same auction as the mobile scheme against static chargers.
AuctionOutcome static_wpt_round(WindowId window,
                                std::vector<mechanism::BidderEntry> demand,
                                std::span<const StaticCharger> chargers);

}  // namespace uavcharge::baselines
