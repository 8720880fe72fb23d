#include "uavcharge/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "uavcharge/valuation.hpp"

namespace uavcharge::baselines {

using mechanism::Allocation;
using mechanism::WindowMarket;

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::ExhaustiveOptimal:
      return "optimal";
    case BaselineKind::StaticWpt:
      return "static";
  }
  return "unknown";
}

namespace {

// Depth-first branch and bound over injective maps from the smaller side
// into the larger side.
class AssignmentSearch {
 public:
  AssignmentSearch(std::vector<double> small, std::vector<double> large)
      : small_(std::move(small)), large_(std::move(large)),
        used_(large_.size(), false), current_(small_.size(), 0) {}

  // Returns, for each small index, the chosen large index.
  std::vector<std::size_t> run() {
    best_ = -1.0;
    descend(0, 0.0);
    return best_choice_;
  }

  double best() const { return best_; }

 private:
  // Pairs the remaining small items (already in descending order) with the
  // largest unused large items; an upper bound on any completion.
  double bound(std::size_t depth) const {
    double b = 0;
    std::size_t l = 0;
    for (std::size_t s = depth; s < small_.size(); ++s) {
      while (l < large_.size() && used_[l]) ++l;
      if (l == large_.size()) break;
      b += small_[s] * large_[l];
      ++l;
    }
    return b;
  }

  void descend(std::size_t depth, double partial) {
    if (depth == small_.size()) {
      if (partial > best_) {
        best_ = partial;
        best_choice_ = current_;
      }
      return;
    }
    if (best_ >= 0 && partial + bound(depth) <= best_ + 1e-12) return;
    for (std::size_t l = 0; l < large_.size(); ++l) {
      if (used_[l]) continue;
      used_[l] = true;
      current_[depth] = l;
      descend(depth + 1, partial + small_[depth] * large_[l]);
      used_[l] = false;
    }
  }

  std::vector<double> small_;
  std::vector<double> large_;
  std::vector<bool> used_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_choice_;
  double best_ = -1.0;
};

}  // namespace

double assignment_count(std::size_t uavs, std::size_t ugvs) {
  const std::size_t small = std::min(uavs, ugvs);
  const std::size_t large = std::max(uavs, ugvs);
  double n = 1;
  for (std::size_t k = 0; k < small; ++k) n *= static_cast<double>(large - k);
  return n;
}

AuctionOutcome exhaustive_optimal(const WindowMarket& market,
                                  std::size_t max_pairs) {
  const std::size_t pairs = market.winner_slots();
  if (pairs > max_pairs)
    throw CapacityError("exhaustive search refused: min(I, J) = " +
                        std::to_string(pairs) + " exceeds the limit of " +
                        std::to_string(max_pairs));

  // Visit bidders by descending valuation and chargers by descending QoRS
  // so the first complete assignment is a strong incumbent.
  std::vector<std::size_t> bidders(market.demand.size());
  std::iota(bidders.begin(), bidders.end(), std::size_t{0});
  std::stable_sort(bidders.begin(), bidders.end(), [&](auto a, auto b) {
    const auto& x = market.demand[a];
    const auto& y = market.demand[b];
    if (x.valuation != y.valuation) return x.valuation > y.valuation;
    return raw(x.uav) < raw(y.uav);
  });
  const std::vector<std::size_t>& chargers = market.by_qors;

  std::vector<double> vals, qs;
  for (auto i : bidders) vals.push_back(market.demand[i].valuation);
  for (auto j : chargers) qs.push_back(market.supply[j].qors);

  Allocation allocation;
  if (pairs > 0) {
    const bool uavs_small = vals.size() <= qs.size();
    AssignmentSearch search(uavs_small ? vals : qs, uavs_small ? qs : vals);
    const auto choice = search.run();
    for (std::size_t s = 0; s < choice.size(); ++s) {
      const std::size_t bidder = uavs_small ? bidders[s] : bidders[choice[s]];
      const std::size_t charger = uavs_small ? chargers[choice[s]] : chargers[s];
      allocation.pairs.push_back({bidder, charger});
    }
    // Rank pairs by the chargers' QoRS order.
    std::vector<std::size_t> position(market.supply.size());
    for (std::size_t r = 0; r < chargers.size(); ++r) position[chargers[r]] = r;
    std::sort(allocation.pairs.begin(), allocation.pairs.end(),
              [&](const auto& a, const auto& b) {
                return position[a.supplier] < position[b.supplier];
              });
  }
  return mechanism::settle(market, allocation,
                           mechanism::price(market, allocation));
}

double static_qors(Vec2 spot, Vec2 charger, double reach, double floor) {
  const double d = std::min(distance(spot, charger), reach);
  return valuation::qors_from_distance(d, reach, floor);
}

double mobile_qors(Vec2 spot, Vec2 ugv, double reach, double floor) {
  const double d = std::min(distance(spot, ugv) / 2.0, reach);
  return valuation::qors_from_distance(d, reach, floor);
}

WindowMarket static_market(WindowId window,
                           std::vector<mechanism::BidderEntry> demand,
                           std::span<const StaticCharger> chargers) {
  std::vector<mechanism::SupplierEntry> supply;
  supply.reserve(chargers.size());
  for (const auto& c : chargers) supply.push_back({c.id, c.qors});
  return mechanism::make_market(window, std::move(demand), std::move(supply));
}

AuctionOutcome static_wpt_round(WindowId window,
                                std::vector<mechanism::BidderEntry> demand,
                                std::span<const StaticCharger> chargers) {
  return mechanism::run_auction(static_market(window, std::move(demand), chargers));
}

}  // namespace uavcharge::baselines
