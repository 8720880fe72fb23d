#include "uavcharge/audit.hpp"

#include <algorithm>
#include <cmath>

#include "uavcharge/csv.hpp"

namespace uavcharge::audit {

std::vector<IrViolation> check_ir(const AuctionOutcome& outcome) {
  std::vector<IrViolation> out;
  for (std::size_t i = 0; i < outcome.uav_utilities.size(); ++i)
    if (outcome.uav_utilities[i] < -kTolerance)
      out.push_back({IrViolation::Side::Uav, i, outcome.uav_utilities[i]});
  for (std::size_t j = 0; j < outcome.ugv_utilities.size(); ++j)
    if (outcome.ugv_utilities[j] < -kTolerance)
      out.push_back({IrViolation::Side::Ugv, j, outcome.ugv_utilities[j]});
  return out;
}

std::vector<double> deviation_grid(const WindowMarket& market,
                                   std::size_t bidder, double epsilon) {
  const double truthful = market.demand.at(bidder).bid;
  std::vector<double> grid;
  for (double f : {0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0}) grid.push_back(f * truthful);
  for (std::size_t k = 0; k < market.demand.size(); ++k) {
    if (k == bidder) continue;
    const double b = market.demand[k].bid;
    grid.push_back(b + epsilon);
    if (b - epsilon >= 0) grid.push_back(b - epsilon);
  }
  return grid;
}

DeviationResult deviation_probe(const WindowMarket& market, std::size_t bidder,
                                std::span<const double> grid) {
  const double truthful_bid = market.demand.at(bidder).bid;
  DeviationResult r;
  r.truthful_utility =
      mechanism::uav_utility(bidder, mechanism::run_auction(market));
  r.best_utility = r.truthful_utility;
  r.best_bid = truthful_bid;
  bool have_untruthful = false;
  for (double b : grid) {
    if (b == truthful_bid) continue;
    const double u = mechanism::uav_utility(
        bidder, mechanism::run_auction(mechanism::with_bid(market, bidder, b)));
    if (!have_untruthful || u > r.best_untruthful_utility) {
      r.best_untruthful_utility = u;
      r.best_untruthful_bid = b;
      have_untruthful = true;
    }
    if (u > r.best_utility) {
      r.best_utility = u;
      r.best_bid = b;
    }
  }
  if (!have_untruthful) {
    r.best_untruthful_utility = r.truthful_utility;
    r.best_untruthful_bid = truthful_bid;
  }
  return r;
}

namespace {

// Utility bidder i would get holding match m at m's price.
double utility_at(const WindowMarket& market, std::size_t i, const Match& m) {
  return m.qors * market.demand.at(i).valuation - m.payment;
}

double own_utility(const WindowMarket& market, const AuctionOutcome& outcome,
                   std::size_t i) {
  const Match* m = outcome.match_of(i);
  return m ? utility_at(market, i, *m) : 0.0;
}

}  // namespace

EnvyReport non_envy_ratio(const WindowMarket& market,
                          const AuctionOutcome& outcome) {
  EnvyReport r;
  const std::size_t participants = outcome.num_uavs;
  if (participants == 0) return r;

  std::size_t content = 0, content_winners = 0;
  for (std::size_t i = 0; i < participants; ++i) {
    const double own = own_utility(market, outcome, i);
    bool envies = false;
    for (const auto& m : outcome.matches) {
      if (m.bidder == i) continue;
      if (utility_at(market, i, m) > own + kTolerance) {
        envies = true;
        break;
      }
    }
    if (envies) {
      ++r.envious;
      continue;
    }
    ++content;
    if (outcome.match_of(i)) ++content_winners;
  }
  r.all_participants = static_cast<double>(content) / static_cast<double>(participants);
  if (!outcome.matches.empty())
    r.winners_only = static_cast<double>(content_winners) /
                     static_cast<double>(outcome.matches.size());
  return r;
}

std::size_t check_stability(const WindowMarket& market,
                            const AuctionOutcome& outcome) {
  std::size_t blocking = 0;
  for (std::size_t i = 0; i < outcome.num_uavs; ++i) {
    const Match* mine = outcome.match_of(i);
    const double own = own_utility(market, outcome, i);
    for (std::size_t l = 0; l < outcome.num_ugvs; ++l) {
      if (mine && mine->supplier == l) continue;
      const Match* theirs = nullptr;
      for (const auto& m : outcome.matches)
        if (m.supplier == l) theirs = &m;

      const double price = theirs ? theirs->payment : 0.0;
      const double alt = market.supply.at(l).qors * market.demand.at(i).valuation - price;
      if (!(alt > own + kTolerance)) continue;

      if (!theirs) {
        ++blocking;
        continue;
      }
      // The occupant moves to i's position (or out of the market).
      const std::size_t o = theirs->bidder;
      const double occupant_now = utility_at(market, o, *theirs);
      const double occupant_moved = mine ? utility_at(market, o, *mine) : 0.0;
      if (occupant_moved >= occupant_now - kTolerance) ++blocking;
    }
  }
  return blocking;
}

AuditReport audit_outcome(const WindowMarket& market,
                          const AuctionOutcome& outcome, std::string instance,
                          bool probe_incentives) {
  AuditReport r;
  r.instance = std::move(instance);
  r.uavs = market.demand.size();
  r.ugvs = market.supply.size();
  r.ir_violations = check_ir(outcome).size();
  if (probe_incentives) {
    for (std::size_t i = 0; i < market.demand.size(); ++i) {
      const auto grid = deviation_grid(market, i);
      const double gain = deviation_probe(market, i, grid).gain();
      r.worst_gain = std::max(r.worst_gain, gain);
      if (gain > kTolerance) ++r.ic_violations;
    }
  }
  const EnvyReport envy = non_envy_ratio(market, outcome);
  r.non_envy_ratio = envy.all_participants;
  r.non_envy_winners = envy.winners_only;
  r.blocking_pairs = check_stability(market, outcome);
  return r;
}

AuditReport audit_market(const WindowMarket& market, std::string instance) {
  return audit_outcome(market, mechanism::run_auction(market),
                       std::move(instance), true);
}

std::vector<AuditReport> audit_all(std::span<const WindowMarket> markets) {
  std::vector<AuditReport> reports(markets.size());
  const auto n = static_cast<std::ptrdiff_t>(markets.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k)
    reports[k] = audit_market(markets[k], "instance-" + std::to_string(k));
  return reports;
}

std::vector<AuditReport> audit_all_serial(std::span<const WindowMarket> markets) {
  std::vector<AuditReport> reports;
  reports.reserve(markets.size());
  for (std::size_t k = 0; k < markets.size(); ++k)
    reports.push_back(audit_market(markets[k], "instance-" + std::to_string(k)));
  return reports;
}

void write_audit_header(std::ostream& out) {
  out << "instance,uavs,ugvs,ir_violations,ic_violations,worst_gain,"
         "non_envy_ratio,non_envy_winners,blocking_pairs\n";
}

void write_audit_row(std::ostream& out, const AuditReport& r) {
  out << r.instance << ',' << r.uavs << ',' << r.ugvs << ',' << r.ir_violations
      << ',' << r.ic_violations << ',' << fmt_num(r.worst_gain) << ','
      << fmt_num(r.non_envy_ratio) << ',' << fmt_num(r.non_envy_winners) << ','
      << r.blocking_pairs << '\n';
}

}  // namespace uavcharge::audit
