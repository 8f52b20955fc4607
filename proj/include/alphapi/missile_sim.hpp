#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "alphapi/engagement.hpp"
#include "alphapi/offpolicy.hpp"

namespace alphapi {

/// Target evasive maneuver: zero until start_time, then a sinusoid of the
/// given period with |a_T| <= peak_accel.
struct ManeuverSpec {
  bool enabled = true;
  double start_time = 1.5;          // s
  double peak_accel = 9.0 * 9.81;   // m/s^2
  double period = 2.0;              // s
};

double target_maneuver(double t, const ManeuverSpec& spec);

/// Head-on planar interception per the benchmark conditions: missile at the
/// origin flying along +x at 600 m/s, target 10 km down-range closing at
/// 300 m/s on a 170 deg flight-path angle. Guidance weights on the
/// line-of-sight state (theta, theta_dot) with q2 = 1e8, R = 1, gamma = 10.
struct EngagementConfig {
  Eigen::Vector2d missile_pos{0.0, 0.0};
  double missile_fpa = 0.0;                  // eta (rad)
  double missile_speed = 600.0;              // m/s
  Eigen::Vector2d target_pos{10000.0, 0.0};
  double target_fpa = 170.0 * M_PI / 180.0;  // beta (rad)
  double target_speed = 300.0;               // m/s

  double q1 = 0.0;
  double q2 = 1e8;
  double r_weight = 1.0;
  double gamma = 10.0;

  double dt = 0.005;            // sampling step (s)
  int windows_per_cycle = 100;  // data points per 0.5 s learning cycle
  int substeps = 5;
  double alpha = 0.3;
  // Stop threshold on the stacked-weight change. The critic weights carry
  // the q2 cost scale (~1e8), so the threshold is absolute but sized for it.
  double tolerance = 10.0;
  int iteration_cap = 60;

  double exploration_amplitude = 20.0;  // m/s^2, uniform
  int exploration_cycles = 2;           // cycles that explore unconditionally
  double accel_limit = 30.0 * 9.81;     // command saturation (m/s^2)
  double max_time = 30.0;               // hard stop (s)

  // The solver needs an initial admissible policy: from zero weights the
  // damped Newton flow on this open-loop-unstable plant lands on the
  // anti-stabilizing root. The first cycle's solve is therefore seeded with
  // a proportional-navigation-equivalent actor gain N * |closing rate|;
  // later cycles warm-start from the previous solution.
  double seed_navigation_ratio = 3.0;

  // Once the line-of-sight rate has been driven below this level the cost is
  // at its floor and a cycle's data carries no usable excitation: exploration
  // pauses and freshly solved weights are not adopted. Learning resumes by
  // itself when the rate re-exceeds the threshold (e.g. a target maneuver).
  double learn_rate_threshold = 2e-4;  // rad/s, RMS over one cycle

  ManeuverSpec maneuver;
  std::uint64_t seed = 1;

  double cycle_period() const { return windows_per_cycle * dt; }
};

/// One learning cycle's outcome.
struct CycleRecord {
  int index = 0;
  double t_start = 0.0;
  int iterations = 0;
  bool converged = false;
  bool adopted = false;  // solution passed the gates and now flies
  Eigen::VectorXd actor_weights;        // weights driving the next cycle
  Eigen::VectorXd critic_weights;
  std::vector<Eigen::VectorXd> weight_iterates;  // stacked, includes W_0
};

struct EngagementResult {
  std::vector<double> time;  // one entry per sampling step
  std::vector<Eigen::Vector2d> missile_pos;
  std::vector<Eigen::Vector2d> target_pos;
  std::vector<double> range;
  std::vector<double> theta;
  std::vector<double> theta_dot;
  std::vector<double> accel_missile;  // commanded a_M
  std::vector<double> accel_target;
  std::vector<CycleRecord> cycles;
  double miss_distance = 0.0;  // interpolated minimum range (m)
  double intercept_time = 0.0; // time of closest approach (s)
  bool intercept = false;      // closest approach reached before max_time
};

/// Closed-loop engagement: fly 0.5 s cycles under the previous cycle's actor
/// (plus decaying exploration noise), record the line-of-sight state windows,
/// re-solve the off-policy iteration on each cycle's data, and hand the new
/// actor to the next cycle. Runs until the closing velocity changes sign or
/// the range guard is reached.
EngagementResult run_engagement(const EngagementConfig& cfg);

}  // namespace alphapi
