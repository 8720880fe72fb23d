#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "uavcharge/types.hpp"

namespace uavcharge::mechanism {

/// Demand side entry: the sealed bid and the (private) window-averaged
/// valuation. The mechanism reads only `bid`; `valuation` feeds utilities.
struct BidderEntry {
  UavId uav{};
  double valuation = 0;
  double bid = 0;
};

struct SupplierEntry {
  UgvId ugv{};
  double qors = 0;
};

/// One window's market. `by_bid` and `by_qors` are the descending sorted
/// views (ties broken by ascending agent id) over `demand` and `supply`.
struct WindowMarket {
  WindowId window{};
  std::vector<BidderEntry> demand;
  std::vector<SupplierEntry> supply;
  std::vector<std::size_t> by_bid;
  std::vector<std::size_t> by_qors;

  std::size_t winner_slots() const {
    return demand.size() < supply.size() ? demand.size() : supply.size();
  }
  bool empty() const { return winner_slots() == 0; }
};

/// Builds the sorted views. Throws std::invalid_argument for a negative bid
/// or a nonpositive QoRS.
WindowMarket make_market(WindowId window, std::vector<BidderEntry> demand,
                         std::vector<SupplierEntry> supply);

/// Copy of `market` with one bidder's bid replaced (sorted views rebuilt).
WindowMarket with_bid(const WindowMarket& market, std::size_t bidder,
                      double bid);

struct UavCandidate {
  UavState state;
  Bid bid;
  double valuation = 0;
  bool seeking = false;
};

struct UgvCandidate {
  UgvState state;
  bool idle = false;
};

/// Type evaluation: I' = seeking UAVs whose bid belongs to `window`;
/// J' = idle UGVs with q > 0 whose remaining supply covers every admitted
/// UAV's gap to its satisfactory level.
WindowMarket admit(std::span<const UavCandidate> uavs,
                   std::span<const UgvCandidate> ugvs, WindowId window);

/// Matched pairs in rank order: pairs[j] = (g(j+1), UGV of rank j+1).
struct Allocation {
  struct Pair {
    std::size_t bidder = 0;
    std::size_t supplier = 0;
  };
  std::vector<Pair> pairs;
};

/// Assortative allocation: j-th highest bid to j-th highest QoRS.
Allocation allocate(const WindowMarket& market);

struct PaymentSchedule {
  std::vector<double> by_rank;  // p_g(1) .. p_g(K)
};

/// Last-winner rule plus the recursion
/// p_g(j) = (q_j - q_{j+1}) b_g(j+1) + p_g(j+1).
/// The last winner pays q_K times the highest losing bid when some bidder
/// is unmatched, else 0. Pairs are ranked by descending QoRS.
PaymentSchedule price(const WindowMarket& market, const Allocation& allocation);

/// Same schedule written as the telescoping sum
/// sum_{k=j}^{K-1} (q_k - q_{k+1}) b_g(k+1) + p_g(K).
PaymentSchedule price_unrolled(const WindowMarket& market,
                               const Allocation& allocation);

/// Externality closed form sum_{k=j}^{K-1} (q_k - q_{k+1}) b_g(k+1), which
/// omits the last-winner boundary term; agrees with `price` only when no
/// bidder is left unmatched.
PaymentSchedule price_closed_form(const WindowMarket& market,
                                  const Allocation& allocation);

/// Assembles beta, matches, utilities and surplus.
AuctionOutcome settle(const WindowMarket& market, const Allocation& allocation,
                      const PaymentSchedule& payments);

/// q_j * valuation - payment for a winner, 0 otherwise.
double uav_utility(std::size_t bidder, const AuctionOutcome& outcome);
/// Payment received by a matched UGV, 0 otherwise.
double ugv_utility(std::size_t supplier, const AuctionOutcome& outcome);
/// sum of beta_ij q_j valuation_i.
double social_surplus(const AuctionOutcome& outcome);

/// allocate -> price -> settle. Losing bidders are listed in
/// `outcome.losers` for re-entry in the next window.
AuctionOutcome run_auction(const WindowMarket& market);

/// Outcome rows: window_id,uav_id,ugv_id,bid,q,payment,utility,rank.
/// Losers carry an empty ugv_id and rank 0. A non-empty `scheme` is written
/// as an extra leading column.
void write_outcome_header(std::ostream& out, bool with_scheme);
void write_outcome_rows(std::ostream& out, const WindowMarket& market,
                        const AuctionOutcome& outcome,
                        std::string_view scheme = {});

}  // namespace uavcharge::mechanism
