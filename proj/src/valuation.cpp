#include "uavcharge/valuation.hpp"

#include <algorithm>
#include <stdexcept>

namespace uavcharge::valuation {

double instant_valuation(double urgency, double mu0, double mu1) {
  if (!(urgency >= 0 && urgency <= 1))
    throw std::domain_error("charging urgency must lie in [0, 1]");
  if (mu0 < 0 || mu1 < 0)
    throw std::domain_error("valuation coefficients must be nonnegative");
  return mu0 + mu1 * urgency;
}

double average_valuation(const ValuationSeries& series) {
  if (series.samples.empty())
    throw std::domain_error("average of an empty valuation series");
  double sum = 0;
  for (const auto& s : series.samples) sum += s.value;
  return sum / static_cast<double>(series.samples.size());
}

double qors_from_distance(double distance, double max_distance, double floor) {
  if (max_distance <= 0) throw std::domain_error("max distance must be positive");
  if (distance < 0 || distance > max_distance)
    throw std::domain_error("distance outside [0, max distance]");
  return std::max(1.0 - distance / max_distance, floor);
}

}  // namespace uavcharge::valuation
