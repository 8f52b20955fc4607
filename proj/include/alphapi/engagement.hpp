#pragma once

#include <Eigen/Dense>

namespace alphapi {

/// Planar missile-target geometry. r, theta, theta_dot are derived from the
/// positions and heading angles and kept consistent by step_engagement.
struct EngagementState {
  Eigen::Vector2d missile_pos{0.0, 0.0};
  Eigen::Vector2d target_pos{0.0, 0.0};
  double eta = 0.0;   // missile flight-path angle (rad)
  double beta = 0.0;  // target flight-path angle (rad)
  double Vm = 0.0;    // missile speed (m/s), constant
  double Vt = 0.0;    // target speed (m/s), constant
  double r = 0.0;     // relative range (m)
  double theta = 0.0;       // line-of-sight angle (rad)
  double theta_dot = 0.0;   // line-of-sight rate (rad/s)

  /// Range rate along the line of sight; negative while closing.
  double closing_rate() const;
};

/// Range below which the 1/r terms are no longer meaningful; reaching it
/// terminates an engagement.
inline constexpr double kEngagementRangeGuard = 0.1;  // m

/// Recomputes r, theta, theta_dot from positions, headings and speeds.
void refresh_engagement_geometry(EngagementState& s);

/// Builds a consistent state from positions, headings and speeds.
EngagementState make_engagement_state(const Eigen::Vector2d& missile_pos,
                                      double eta, double Vm,
                                      const Eigen::Vector2d& target_pos,
                                      double beta, double Vt);

/// One fixed-step 4th-order step of the planar kinematics with the lateral
/// accelerations held constant: positions advance along the flight-path
/// angles, eta_dot = a_M / Vm, beta_dot = a_T / Vt. The returned state has
/// its geometry recomputed. Requires s.r > kEngagementRangeGuard.
EngagementState step_engagement(const EngagementState& s, double a_M,
                                double a_T, double dt);

}  // namespace alphapi
