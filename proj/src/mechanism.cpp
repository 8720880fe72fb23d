#include "uavcharge/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uavcharge/csv.hpp"

namespace uavcharge::mechanism {

namespace {

std::vector<std::size_t> sorted_by_bid(const std::vector<BidderEntry>& demand) {
  std::vector<std::size_t> order(demand.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (demand[a].bid != demand[b].bid) return demand[a].bid > demand[b].bid;
    return raw(demand[a].uav) < raw(demand[b].uav);
  });
  return order;
}

std::vector<std::size_t> sorted_by_qors(const std::vector<SupplierEntry>& supply) {
  std::vector<std::size_t> order(supply.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (supply[a].qors != supply[b].qors) return supply[a].qors > supply[b].qors;
    return raw(supply[a].ugv) < raw(supply[b].ugv);
  });
  return order;
}

// Ranked (q_j, b_g(j)) for j = 1..K plus the highest unmatched bid.
struct Ranked {
  std::vector<double> qors;
  std::vector<double> bids;
  std::optional<double> next_bid;
};

Ranked ranked(const WindowMarket& market, const Allocation& allocation) {
  Ranked r;
  std::vector<bool> matched(market.demand.size(), false);
  for (const auto& p : allocation.pairs) {
    r.qors.push_back(market.supply.at(p.supplier).qors);
    r.bids.push_back(market.demand.at(p.bidder).bid);
    matched[p.bidder] = true;
  }
  for (std::size_t i = 0; i < market.demand.size(); ++i) {
    if (matched[i]) continue;
    if (!r.next_bid || market.demand[i].bid > *r.next_bid)
      r.next_bid = market.demand[i].bid;
  }
  return r;
}

double last_winner_payment(const Ranked& r) {
  if (r.qors.empty() || !r.next_bid) return 0.0;
  return r.qors.back() * *r.next_bid;
}

}  // namespace

WindowMarket make_market(WindowId window, std::vector<BidderEntry> demand,
                         std::vector<SupplierEntry> supply) {
  for (const auto& d : demand)
    if (!(d.bid >= 0)) throw std::invalid_argument("bids must be nonnegative");
  for (const auto& s : supply)
    if (!(s.qors > 0)) throw std::invalid_argument("admitted QoRS must be positive");
  WindowMarket m;
  m.window = window;
  m.by_bid = sorted_by_bid(demand);
  m.by_qors = sorted_by_qors(supply);
  m.demand = std::move(demand);
  m.supply = std::move(supply);
  return m;
}

WindowMarket with_bid(const WindowMarket& market, std::size_t bidder, double bid) {
  auto demand = market.demand;
  demand.at(bidder).bid = bid;
  return make_market(market.window, std::move(demand), market.supply);
}

WindowMarket admit(std::span<const UavCandidate> uavs,
                   std::span<const UgvCandidate> ugvs, WindowId window) {
  std::vector<BidderEntry> demand;
  double largest_gap = 0;
  for (const auto& c : uavs) {
    if (!c.seeking || c.bid.window != window || c.bid.uav != c.state.id) continue;
    demand.push_back({c.state.id, c.valuation, c.bid.amount});
    largest_gap = std::max(largest_gap, c.state.soc_satisfactory - c.state.soc);
  }
  std::vector<SupplierEntry> supply;
  for (const auto& c : ugvs) {
    if (!c.idle || !(c.state.qors > 0)) continue;
    if (c.state.supply_remaining < largest_gap) continue;
    supply.push_back({c.state.id, c.state.qors});
  }
  return make_market(window, std::move(demand), std::move(supply));
}

Allocation allocate(const WindowMarket& market) {
  Allocation a;
  const std::size_t k = market.winner_slots();
  a.pairs.reserve(k);
  for (std::size_t j = 0; j < k; ++j)
    a.pairs.push_back({market.by_bid[j], market.by_qors[j]});
  return a;
}

PaymentSchedule price(const WindowMarket& market, const Allocation& allocation) {
  const Ranked r = ranked(market, allocation);
  const std::size_t k = r.qors.size();
  PaymentSchedule p;
  p.by_rank.assign(k, 0.0);
  if (k == 0) return p;
  p.by_rank[k - 1] = last_winner_payment(r);
  for (std::size_t j = k - 1; j-- > 0;)
    p.by_rank[j] = (r.qors[j] - r.qors[j + 1]) * r.bids[j + 1] + p.by_rank[j + 1];
  return p;
}

PaymentSchedule price_unrolled(const WindowMarket& market,
                               const Allocation& allocation) {
  const Ranked r = ranked(market, allocation);
  const std::size_t k = r.qors.size();
  PaymentSchedule p;
  p.by_rank.assign(k, 0.0);
  const double base = last_winner_payment(r);
  for (std::size_t j = 0; j < k; ++j) {
    double sum = 0;
    for (std::size_t m = j; m + 1 < k; ++m)
      sum += (r.qors[m] - r.qors[m + 1]) * r.bids[m + 1];
    p.by_rank[j] = sum + base;
  }
  return p;
}

PaymentSchedule price_closed_form(const WindowMarket& market,
                                  const Allocation& allocation) {
  const Ranked r = ranked(market, allocation);
  const std::size_t k = r.qors.size();
  PaymentSchedule p;
  p.by_rank.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    // Surplus of the others on all chargers minus their surplus without
    // charger j; everyone ranked below j shifts up one slot.
    double with_all = 0, without_j = 0;
    for (std::size_t m = 0; m < j; ++m) {
      with_all += r.qors[m] * r.bids[m];
      without_j += r.qors[m] * r.bids[m];
    }
    for (std::size_t m = j + 1; m < k; ++m) {
      with_all += r.qors[m - 1] * r.bids[m];
      without_j += r.qors[m] * r.bids[m];
    }
    p.by_rank[j] = with_all - without_j;
  }
  return p;
}

AuctionOutcome settle(const WindowMarket& market, const Allocation& allocation,
                      const PaymentSchedule& payments) {
  if (payments.by_rank.size() != allocation.pairs.size())
    throw std::invalid_argument("payment schedule does not match allocation");
  AuctionOutcome o;
  o.window = market.window;
  o.num_uavs = market.demand.size();
  o.num_ugvs = market.supply.size();
  o.beta.assign(o.num_uavs * o.num_ugvs, 0);
  o.uav_utilities.assign(o.num_uavs, 0.0);
  o.ugv_utilities.assign(o.num_ugvs, 0.0);

  std::vector<bool> matched(o.num_uavs, false);
  for (std::size_t j = 0; j < allocation.pairs.size(); ++j) {
    const auto [bidder, supplier] = allocation.pairs[j];
    const auto& d = market.demand.at(bidder);
    const auto& s = market.supply.at(supplier);
    Match m{.rank = j + 1,
            .bidder = bidder,
            .supplier = supplier,
            .uav = d.uav,
            .ugv = s.ugv,
            .bid = d.bid,
            .valuation = d.valuation,
            .qors = s.qors,
            .payment = payments.by_rank[j]};
    o.beta[bidder * o.num_ugvs + supplier] = 1;
    o.uav_utilities[bidder] = m.qors * m.valuation - m.payment;
    o.ugv_utilities[supplier] = m.payment;
    o.social_surplus += m.qors * m.valuation;
    matched[bidder] = true;
    o.matches.push_back(m);
  }
  for (std::size_t idx : market.by_bid)
    if (!matched[idx]) o.losers.push_back(idx);
  return o;
}

double uav_utility(std::size_t bidder, const AuctionOutcome& outcome) {
  const Match* m = outcome.match_of(bidder);
  return m ? m->qors * m->valuation - m->payment : 0.0;
}

double ugv_utility(std::size_t supplier, const AuctionOutcome& outcome) {
  for (const auto& m : outcome.matches)
    if (m.supplier == supplier) return m.payment;
  return 0.0;
}

double social_surplus(const AuctionOutcome& outcome) {
  double s = 0;
  for (const auto& m : outcome.matches) s += m.qors * m.valuation;
  return s;
}

AuctionOutcome run_auction(const WindowMarket& market) {
  const Allocation allocation = allocate(market);
  return settle(market, allocation, price(market, allocation));
}

void write_outcome_header(std::ostream& out, bool with_scheme) {
  if (with_scheme) out << "scheme,";
  out << "window_id,uav_id,ugv_id,bid,q,payment,utility,rank\n";
}

void write_outcome_rows(std::ostream& out, const WindowMarket& market,
                        const AuctionOutcome& outcome, std::string_view scheme) {
  auto prefix = [&] {
    if (!scheme.empty()) out << scheme << ',';
    out << raw(outcome.window) << ',';
  };
  for (const auto& m : outcome.matches) {
    prefix();
    out << raw(m.uav) << ',' << raw(m.ugv) << ',' << fmt_num(m.bid) << ','
        << fmt_num(m.qors) << ',' << fmt_num(m.payment) << ','
        << fmt_num(m.qors * m.valuation - m.payment) << ',' << m.rank << '\n';
  }
  for (std::size_t idx : outcome.losers) {
    const auto& d = market.demand.at(idx);
    prefix();
    out << raw(d.uav) << ",," << fmt_num(d.bid) << ",0,0,0,0\n";
  }
}

}  // namespace uavcharge::mechanism
