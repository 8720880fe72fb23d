#include "uavcharge/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uavcharge::energy {

namespace {

double vertical_power(double speed, double mass, double eps1, double eps2,
                      double kappa3, double sign) {
  if (speed < 0) throw std::domain_error("vertical speed must be nonnegative");
  if (mass <= 0) throw std::domain_error("mass must be positive");
  if (eps2 == 0) throw std::domain_error("eps2 must be nonzero");
  const double weight = mass * kGravity;
  const double induced =
      std::sqrt(speed * speed / 4.0 + weight / (eps2 * eps2)) + sign * speed / 2.0;
  return eps1 * weight * induced + kappa3 * std::pow(weight, 1.5);
}

}  // namespace

double hover_power(double mass, double kappa2, double kappa3) {
  if (mass <= 0) throw std::domain_error("mass must be positive");
  return (kappa2 + kappa3) * std::pow(mass * kGravity, 1.5);
}

double flight_power(double speed, double thrust, double kappa1, double kappa2,
                    double kappa3) {
  if (speed < 0) throw std::domain_error("speed must be nonnegative");
  if (thrust < 0) throw std::domain_error("thrust must be nonnegative");
  return kappa1 * speed * speed * speed + (kappa2 + kappa3) * std::pow(thrust, 1.5);
}

double descend_power(double speed, double mass, double eps1, double eps2,
                     double kappa3) {
  return vertical_power(speed, mass, eps1, eps2, kappa3, -1.0);
}

double ascend_power(double speed, double mass, double eps1, double eps2,
                    double kappa3) {
  return vertical_power(speed, mass, eps1, eps2, kappa3, +1.0);
}

PowerBreakdown power_breakdown(const UavState& uav, double cruise_speed,
                               double thrust, double descend_speed,
                               double ascend_speed, double transfer_power) {
  const auto& p = uav.power;
  return {
      .fly = flight_power(cruise_speed, thrust, p.kappa1, p.kappa2, p.kappa3),
      .hover = hover_power(uav.mass, p.kappa2, p.kappa3),
      .descend = descend_power(descend_speed, uav.mass, p.eps1, p.eps2, p.kappa3),
      .ascend = ascend_power(ascend_speed, uav.mass, p.eps1, p.eps2, p.kappa3),
      .receive = transfer_power,
  };
}

double step_energy(Activity activity, const PowerBreakdown& powers,
                   double discharge_efficiency, double transfer_efficiency,
                   double dt) {
  double watts = 0;
  switch (activity) {
    case Activity::Flying:
      watts = -discharge_efficiency * powers.fly;
      break;
    case Activity::Hovering:
      watts = -discharge_efficiency * powers.hover;
      break;
    case Activity::Descending:
      watts = -discharge_efficiency * powers.descend;
      break;
    case Activity::Ascending:
      watts = -discharge_efficiency * powers.ascend;
      break;
    case Activity::Charging:
      watts = discharge_efficiency * transfer_efficiency * powers.receive;
      break;
  }
  return watts * dt / kJoulesPerWh;
}

double soc_step(double soc, Activity activity, const PowerBreakdown& powers,
                double discharge_efficiency, double transfer_efficiency,
                double dt, double capacity) {
  double next = soc + step_energy(activity, powers, discharge_efficiency,
                                  transfer_efficiency, dt);
  return std::clamp(next, 0.0, capacity);
}

double charging_urgency(double soc, double soc_alert, double capacity) {
  if (capacity <= 0) throw std::domain_error("capacity must be positive");
  if (soc < soc_alert)
    throw std::domain_error("charging urgency undefined below the alert level");
  return 1.0 - (soc - soc_alert) / capacity;
}

double charging_urgency_clamped(double soc, double soc_alert, double capacity) {
  if (soc < soc_alert) return 1.0;
  return charging_urgency(soc, soc_alert, capacity);
}

bool altitude_feasible(double altitude, double sensing_radius,
                       double detection_angle, double altitude_max) {
  if (!(detection_angle > 0 && detection_angle < std::numbers::pi / 2))
    throw std::domain_error("detection angle must lie in (0, pi/2)");
  // cot(pi/4) rounds to 1 + 2^-52; relative slack keeps R = z feasible.
  const double floor = sensing_radius / std::tan(detection_angle);
  return floor <= altitude * (1 + 1e-12) && altitude <= altitude_max;
}

double charge_duration(double soc, double soc_sat, double transfer_power,
                       double discharge_efficiency, double transfer_efficiency) {
  if (soc >= soc_sat) return 0.0;
  if (transfer_power <= 0) throw std::domain_error("transfer power must be positive");
  return kJoulesPerWh * (soc_sat - soc) /
         (discharge_efficiency * transfer_efficiency * transfer_power);
}

}  // namespace uavcharge::energy
