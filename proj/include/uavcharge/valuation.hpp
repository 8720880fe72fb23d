#pragma once

#include <cstdint>
#include <vector>

#include "uavcharge/types.hpp"

namespace uavcharge::valuation {

/// Per-slot valuation samples of one UAV inside one window.
struct ValuationSeries {
  UavId uav{};
  struct Sample {
    std::uint32_t slot = 0;
    double value = 0;
  };
  std::vector<Sample> samples;
};

/// Linear valuation mu0 + mu1 * rho; throws std::domain_error for rho
/// outside [0, 1] or negative coefficients.
double instant_valuation(double urgency, double mu0, double mu1);

/// Mean over the window's slot samples; throws on an empty series.
double average_valuation(const ValuationSeries& series);

/// QoRS as the complement of normalized distance, floored at `floor` so an
/// admitted UGV always has q > 0.
double qors_from_distance(double distance, double max_distance,
                          double floor = 0.05);

}  // namespace uavcharge::valuation
