#pragma once

// Independent oracles and generators shared by the unit and acceptance tests.
// Nothing here calls into the mechanism's allocation or pricing code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "uavcharge/mechanism.hpp"

namespace uavcharge::testing {

inline mechanism::WindowMarket market_of(const std::vector<double>& bids,
                                         const std::vector<double>& qors) {
  std::vector<mechanism::BidderEntry> demand;
  for (std::size_t i = 0; i < bids.size(); ++i)
    demand.push_back({UavId{static_cast<std::uint32_t>(i)}, bids[i], bids[i]});
  std::vector<mechanism::SupplierEntry> supply;
  for (std::size_t j = 0; j < qors.size(); ++j)
    supply.push_back({UgvId{static_cast<std::uint32_t>(j)}, qors[j]});
  return mechanism::make_market(WindowId{0}, std::move(demand), std::move(supply));
}

struct Assignment {
  double surplus = 0;
  std::vector<int> slot_of;  // per value index: matched qors index or -1
};

/// Best one-to-one assignment of min(I, J) pairs maximizing sum v_i * q_j,
/// by enumerating every permutation of the larger side.
inline Assignment brute_force_assignment(const std::vector<double>& values,
                                         const std::vector<double>& qors) {
  const bool values_small = values.size() <= qors.size();
  const std::size_t small = std::min(values.size(), qors.size());
  const std::size_t large = std::max(values.size(), qors.size());
  std::vector<std::size_t> perm(large);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Assignment best;
  best.slot_of.assign(values.size(), -1);
  bool first = true;
  do {
    double s = 0;
    for (std::size_t k = 0; k < small; ++k)
      s += values_small ? values[k] * qors[perm[k]] : values[perm[k]] * qors[k];
    if (first || s > best.surplus) {
      first = false;
      best.surplus = s;
      std::fill(best.slot_of.begin(), best.slot_of.end(), -1);
      for (std::size_t k = 0; k < small; ++k) {
        if (values_small)
          best.slot_of[k] = static_cast<int>(perm[k]);
        else
          best.slot_of[perm[k]] = static_cast<int>(k);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double brute_force_surplus(const std::vector<double>& values,
                                  const std::vector<double>& qors) {
  if (values.empty() || qors.empty()) return 0.0;
  return brute_force_assignment(values, qors).surplus;
}

/// Clarke-pivot payments: the best surplus the others reach without bidder
/// i minus what the others get in the efficient assignment. Losers pay 0.
/// Meaningful for tie-free bids.
inline std::vector<double> vcg_payments(const std::vector<double>& bids,
                                        const std::vector<double>& qors) {
  std::vector<double> pay(bids.size(), 0.0);
  if (bids.empty() || qors.empty()) return pay;
  const Assignment best = brute_force_assignment(bids, qors);
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (best.slot_of[i] < 0) continue;
    std::vector<double> others = bids;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    const double own = bids[i] * qors[static_cast<std::size_t>(best.slot_of[i])];
    pay[i] = brute_force_surplus(others, qors) - (best.surplus - own);
  }
  return pay;
}

/// Hand-rolled generator for property tests.
struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }
  std::vector<double> values(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }
  std::mt19937_64 rng;
};

}  // namespace uavcharge::testing
