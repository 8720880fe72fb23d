#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "uavcharge/mechanism.hpp"
#include "uavcharge/types.hpp"

namespace uavcharge::audit {

using mechanism::WindowMarket;

/// Slack for every utility comparison.
inline constexpr double kTolerance = 1e-9;

struct IrViolation {
  enum class Side { Uav, Ugv };
  Side side = Side::Uav;
  std::size_t index = 0;
  double utility = 0;
};

/// Agents whose utility is below -kTolerance.
std::vector<IrViolation> check_ir(const AuctionOutcome& outcome);

/// Misreports to try for `bidder`: {0.25, 0.5, 0.9, 1, 1.1, 2, 4} x the
/// truthful bid plus every opponent's bid +/- epsilon (negatives dropped).
std::vector<double> deviation_grid(const WindowMarket& market,
                                   std::size_t bidder, double epsilon = 1e-6);

struct DeviationResult {
  double truthful_utility = 0;
  double best_utility = 0;  // over the whole grid, truthful point included
  double best_bid = 0;
  double best_untruthful_utility = 0;  // over grid points != truthful bid
  double best_untruthful_bid = 0;
  double gain() const { return best_utility - truthful_utility; }
};

/// Re-runs the auction with `bidder`'s bid replaced by each grid point, all
/// other bids held fixed, and scores every run with the bidder's true
/// valuation. `market` must carry the truthful bid for `bidder`.
DeviationResult deviation_probe(const WindowMarket& market, std::size_t bidder,
                                std::span<const double> grid);

struct EnvyReport {
  double all_participants = 1;  // non-envious / |I'|
  double winners_only = 1;      // non-envious winners / |W|
  std::size_t envious = 0;
};

/// Valuations come from `market`, allocation and prices from `outcome`.
/// A participant envies winner k when q_k * valuation - p_k exceeds its own
/// utility (0 for losers) by more than kTolerance.
EnvyReport non_envy_ratio(const WindowMarket& market,
                          const AuctionOutcome& outcome);

/// (UAV i, UGV l) blocks when i strictly prefers (l, price of l) to its own
/// position and l's occupant, if any, weakly prefers i's position to l.
/// Unmatched UGVs are priced at 0.
std::size_t check_stability(const WindowMarket& market,
                            const AuctionOutcome& outcome);

struct AuditReport {
  std::string instance;
  std::size_t uavs = 0;
  std::size_t ugvs = 0;
  std::size_t ir_violations = 0;
  std::size_t ic_violations = 0;
  double worst_gain = 0;
  double non_envy_ratio = 1;
  double non_envy_winners = 1;
  std::size_t blocking_pairs = 0;
};

/// Runs the auction on a truthful market and applies every check; the
/// deviation probe covers every bidder.
AuditReport audit_market(const WindowMarket& truthful_market,
                         std::string instance);

/// IR, envy and stability checks on an outcome produced by any scheme.
/// The deviation probe re-runs the mechanism, so it is only meaningful (and
/// only run) when `probe_incentives` is set.
AuditReport audit_outcome(const WindowMarket& market,
                          const AuctionOutcome& outcome, std::string instance,
                          bool probe_incentives);

/// Audits a corpus; the parallel version distributes instances over OpenMP
/// threads and returns reports in input order.
std::vector<AuditReport> audit_all(std::span<const WindowMarket> markets);
std::vector<AuditReport> audit_all_serial(std::span<const WindowMarket> markets);

void write_audit_header(std::ostream& out);
void write_audit_row(std::ostream& out, const AuditReport& report);

}  // namespace uavcharge::audit
