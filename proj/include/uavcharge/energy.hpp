#pragma once

#include "uavcharge/types.hpp"

namespace uavcharge::energy {

/// Per-activity power draw (W). `receive` is the power the charger
/// transmits; efficiencies are applied by soc_step.
struct PowerBreakdown {
  double fly = 0;
  double hover = 0;
  double descend = 0;
  double ascend = 0;
  double receive = 0;
};

/// (kappa2 + kappa3) * (m g)^{3/2}.
double hover_power(double mass, double kappa2, double kappa3);

/// kappa1 v^3 + (kappa2 + kappa3) * thrust^{3/2}.
double flight_power(double speed, double thrust, double kappa1, double kappa2,
                    double kappa3);

// Vertical legs. The two differ only in the sign of the v/2 term, so
// ascend_power(v) - descend_power(v) == eps1 * m * g * v.
double descend_power(double speed, double mass, double eps1, double eps2,
                     double kappa3);
double ascend_power(double speed, double mass, double eps1, double eps2,
                    double kappa3);

/// Power draw of every activity for one airframe.
PowerBreakdown power_breakdown(const UavState& uav, double cruise_speed,
                               double thrust, double descend_speed,
                               double ascend_speed, double transfer_power);

/// Signed battery energy change (Wh) of one step of length dt seconds,
/// before clamping.
double step_energy(Activity activity, const PowerBreakdown& powers,
                   double discharge_efficiency, double transfer_efficiency,
                   double dt);

/// Linear SoC update: charging adds eta_i*eta_j*P_e*dt, every other
/// activity drains eta_i*P_activity*dt. Result is clamped to [0, capacity].
double soc_step(double soc, Activity activity, const PowerBreakdown& powers,
                double discharge_efficiency, double transfer_efficiency,
                double dt, double capacity);

/// rho = 1 - (s - s_min) / C. Throws std::domain_error when s < s_min.
double charging_urgency(double soc, double soc_alert, double capacity);

/// Urgency clamped to 1 for UAVs already below the alert level.
double charging_urgency_clamped(double soc, double soc_alert, double capacity);

/// R cot(theta) <= z <= z_max. Throws for theta outside (0, pi/2).
bool altitude_feasible(double altitude, double sensing_radius,
                       double detection_angle, double altitude_max);

/// Seconds needed to lift SoC from soc to soc_sat; zero when already there.
double charge_duration(double soc, double soc_sat, double transfer_power,
                       double discharge_efficiency, double transfer_efficiency);

}  // namespace uavcharge::energy
