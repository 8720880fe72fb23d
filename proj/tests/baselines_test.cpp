#include <gtest/gtest.h>

#include "support.hpp"
#include "uavcharge/baselines.hpp"

namespace uavcharge::baselines {
namespace {

using testing::market_of;

TEST(Exhaustive, TwoByTwoPicksAssortative) {
  const auto m = market_of({4, 2}, {0.9, 0.5});
  const auto o = exhaustive_optimal(m);
  EXPECT_NEAR(o.social_surplus, 4.6, 1e-12);
  // The anti-sorted alternative is worse.
  EXPECT_NEAR(4 * 0.5 + 2 * 0.9, 3.8, 1e-12);
}

TEST(Exhaustive, OneByOne) {
  const auto o = exhaustive_optimal(market_of({3}, {0.4}));
  ASSERT_EQ(o.matches.size(), 1u);
  EXPECT_NEAR(o.social_surplus, 1.2, 1e-12);
}

TEST(Exhaustive, TiesMatchMechanismSurplus) {
  const auto m = market_of({3, 3, 2, 2, 1}, {0.5, 0.5, 0.9});
  EXPECT_NEAR(exhaustive_optimal(m).social_surplus,
              mechanism::run_auction(m).social_surplus, 1e-12);
}

TEST(Exhaustive, UsesValuationsNotBids) {
  std::vector<mechanism::BidderEntry> d{{UavId{0}, 1.0, 5.0}, {UavId{1}, 4.0, 2.0}};
  std::vector<mechanism::SupplierEntry> s{{UgvId{0}, 0.9}, {UgvId{1}, 0.5}};
  const auto m = mechanism::make_market(WindowId{0}, d, s);
  const auto o = exhaustive_optimal(m);
  EXPECT_NEAR(o.social_surplus, 4 * 0.9 + 1 * 0.5, 1e-12);
  EXPECT_LT(mechanism::run_auction(m).social_surplus, o.social_surplus);
}

TEST(Exhaustive, AgreesWithBruteForceOnRandomMarkets) {
  testing::Gen g(21);
  for (int k = 0; k < 300; ++k) {
    const auto bids = g.values(g.size(0, 8), 1, 6);
    const auto qs = g.values(g.size(0, 8), 0.05, 1);
    const auto o = exhaustive_optimal(market_of(bids, qs));
    EXPECT_NEAR(o.social_surplus, testing::brute_force_surplus(bids, qs), 1e-9);
    EXPECT_TRUE(violations(o).empty());
  }
}

TEST(Exhaustive, NeverBelowMechanism) {
  testing::Gen g(22);
  for (int k = 0; k < 300; ++k) {
    const auto uavs = static_cast<std::uint32_t>(g.size(1, 7));
    const auto ugvs = static_cast<std::uint32_t>(g.size(1, 7));
    std::vector<mechanism::BidderEntry> d;
    for (std::uint32_t i = 0; i < uavs; ++i)
      d.push_back({UavId{i}, g.uniform(1, 6), g.uniform(1, 6)});
    std::vector<mechanism::SupplierEntry> s;
    for (std::uint32_t j = 0; j < ugvs; ++j) s.push_back({UgvId{j}, g.uniform(0.05, 1)});
    const auto m = mechanism::make_market(WindowId{0}, d, s);
    EXPECT_GE(exhaustive_optimal(m).social_surplus,
              mechanism::run_auction(m).social_surplus - 1e-12);
  }
}

TEST(Exhaustive, GuardRefusesLargeMarkets) {
  const auto m = market_of(std::vector<double>(11, 1.0), std::vector<double>(11, 0.5));
  EXPECT_THROW(exhaustive_optimal(m), CapacityError);
  EXPECT_NO_THROW(exhaustive_optimal(m, 11));
  EXPECT_NO_THROW(exhaustive_optimal(market_of(std::vector<double>(20, 1.0), {0.5})));
}

TEST(Exhaustive, TenByTenIsFast) {
  testing::Gen g(23);
  const auto m = market_of(g.values(10, 1, 6), g.values(10, 0.05, 1));
  EXPECT_NEAR(exhaustive_optimal(m).social_surplus,
              mechanism::run_auction(m).social_surplus, 1e-9);
}

TEST(AssignmentCount, FallingFactorial) {
  EXPECT_EQ(assignment_count(3, 5), 60.0);
  EXPECT_EQ(assignment_count(5, 3), 60.0);
  EXPECT_EQ(assignment_count(0, 4), 1.0);
}

TEST(StaticWpt, SameAuctionOverFixedChargers) {
  const std::vector<StaticCharger> chargers{{UgvId{0}, {0, 0}, 0.9}, {UgvId{1}, {1, 1}, 0.5}};
  std::vector<mechanism::BidderEntry> d{{UavId{0}, 4, 4}, {UavId{1}, 2, 2}};
  const auto o = static_wpt_round(WindowId{0}, d, chargers);
  EXPECT_NEAR(o.matches[0].payment, 0.8, 1e-12);
  EXPECT_EQ(o.matches[0].ugv, UgvId{0});
}

TEST(StaticWpt, ToString) {
  EXPECT_EQ(to_string(BaselineKind::ExhaustiveOptimal), "optimal");
  EXPECT_EQ(to_string(BaselineKind::StaticWpt), "static");
}

}  // namespace
}  // namespace uavcharge::baselines
