#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "uavcharge/audit.hpp"
#include "uavcharge/simulator.hpp"

namespace uavcharge::audit {
namespace {

using testing::market_of;

TEST(CheckIr, TruthfulTwoByTwo) {
  EXPECT_TRUE(check_ir(mechanism::run_auction(market_of({4, 2}, {0.9, 0.5}))).empty());
}

TEST(CheckIr, EmptyOutcome) { EXPECT_TRUE(check_ir(AuctionOutcome{}).empty()); }

TEST(CheckIr, OverchargedWinnerFlagged) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  auto a = mechanism::allocate(m);
  const auto o = mechanism::settle(m, a, mechanism::PaymentSchedule{{3.7, 0.0}});
  const auto v = check_ir(o);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].side, IrViolation::Side::Uav);
  EXPECT_NEAR(v[0].utility, -0.1, 1e-12);
}

TEST(DeviationGrid, MultiplesAndNeighbours) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  const auto grid = deviation_grid(m, 0);
  EXPECT_EQ(grid.size(), 9u);
  EXPECT_EQ(grid[0], 1.0);
  EXPECT_EQ(grid[6], 16.0);
  EXPECT_EQ(grid[7], 2 + 1e-6);
}

TEST(DeviationProbe, OverbiddingLeaderGainsNothing) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  const std::vector<double> grid{8};
  const auto r = deviation_probe(m, 0, grid);
  EXPECT_NEAR(r.truthful_utility, 2.8, 1e-12);
  EXPECT_NEAR(r.best_untruthful_utility, 2.8, 1e-12);
  EXPECT_EQ(r.gain(), 0.0);
}

TEST(DeviationProbe, UnderbiddingLeaderLoses) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  const std::vector<double> grid{1.5};
  const auto r = deviation_probe(m, 0, grid);
  EXPECT_NEAR(r.best_untruthful_utility, 0.5 * 4, 1e-12);
  EXPECT_LE(r.best_untruthful_utility, r.truthful_utility);
  EXPECT_EQ(r.gain(), 0.0);
}

TEST(DeviationProbe, LoserOverbiddingDoesNotPay) {
  const auto m = market_of({4, 2, 1}, {0.9, 0.5});
  const auto r = deviation_probe(m, 2, deviation_grid(m, 2));
  EXPECT_EQ(r.truthful_utility, 0.0);
  EXPECT_LE(r.best_untruthful_utility, 1e-9);
}

TEST(DeviationProbe, SingleBidderHasZeroGain) {
  const auto m = market_of({5}, {1});
  const auto r = deviation_probe(m, 0, deviation_grid(m, 0));
  EXPECT_EQ(r.gain(), 0.0);
  EXPECT_EQ(r.best_untruthful_utility, r.truthful_utility);
}

TEST(NonEnvy, TwoByTwoTruthful) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  const auto r = non_envy_ratio(m, mechanism::run_auction(m));
  EXPECT_EQ(r.all_participants, 1.0);
  EXPECT_EQ(r.winners_only, 1.0);
}

TEST(NonEnvy, SingleParticipant) {
  const auto m = market_of({3}, {0.4, 0.9});
  EXPECT_EQ(non_envy_ratio(m, mechanism::run_auction(m)).all_participants, 1.0);
}

TEST(NonEnvy, SwappedAllocationCreatesEnvy) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  mechanism::Allocation swapped;
  swapped.pairs = {{1, 0}, {0, 1}};
  const auto o = mechanism::settle(m, swapped, mechanism::price(m, swapped));
  const auto r = non_envy_ratio(m, o);
  EXPECT_LT(r.all_participants, 1.0);
  EXPECT_GE(r.envious, 1u);
}

TEST(Stability, TruthfulTwoByTwoHasNoBlockingPair) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  EXPECT_EQ(check_stability(m, mechanism::run_auction(m)), 0u);
}

TEST(Stability, SwappedMatchesBlock) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  mechanism::Allocation swapped;
  swapped.pairs = {{1, 0}, {0, 1}};
  // The low bidder holds the 0.9 charger at price 1.6 (utility 0.2) and
  // prefers the free-priced 0.5 charger, whose occupant is indifferent.
  const auto o = mechanism::settle(m, swapped, mechanism::price(m, swapped));
  EXPECT_GE(check_stability(m, o), 1u);
}

TEST(Stability, EmptyOutcome) {
  const auto m = market_of({}, {});
  EXPECT_EQ(check_stability(m, mechanism::run_auction(m)), 0u);
}

TEST(Stability, IdleChargerAtZeroPriceBlocksAnUnmatchedBidder) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  mechanism::Allocation partial;
  partial.pairs = {{0, 0}};
  const auto o = mechanism::settle(m, partial, mechanism::PaymentSchedule{{0.0}});
  EXPECT_GE(check_stability(m, o), 1u);
}

TEST(AuditMarket, RandomCorpusIsClean) {
  const ScenarioConfig c;
  std::vector<mechanism::WindowMarket> corpus;
  for (std::uint64_t s = 0; s < 60; ++s)
    corpus.push_back(sim::random_market(c, s, 1 + s % 7, 1 + (s / 7) % 7, s % 3 == 0));
  for (const auto& r : audit_all(corpus)) {
    EXPECT_EQ(r.ir_violations, 0u) << r.instance;
    EXPECT_EQ(r.ic_violations, 0u) << r.instance;
    EXPECT_EQ(r.blocking_pairs, 0u) << r.instance;
    EXPECT_EQ(r.non_envy_ratio, 1.0) << r.instance;
  }
}

TEST(AuditMarket, ParallelMatchesSerial) {
  const ScenarioConfig c;
  std::vector<mechanism::WindowMarket> corpus;
  for (std::uint64_t s = 0; s < 40; ++s) corpus.push_back(sim::random_market(c, s, 6, 4));
  const auto par = audit_all(corpus);
  const auto ser = audit_all_serial(corpus);
  std::ostringstream a, b;
  for (const auto& r : par) write_audit_row(a, r);
  for (const auto& r : ser) write_audit_row(b, r);
  EXPECT_EQ(a.str(), b.str());
}

}  // namespace
}  // namespace uavcharge::audit
