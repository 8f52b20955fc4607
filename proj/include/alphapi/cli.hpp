#pragma once

#include <string>

#include "alphapi/config.hpp"

namespace alphapi {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitInfeasible = 3;

/// Nonlinear benchmark run: collect windows under uniform behavior inputs,
/// solve the off-policy iteration, replay the closed loop under the decaying
/// cosine disturbance, and emit weights_per_iter.csv, trajectory.csv,
/// inputs.csv, attenuation.csv and manifest.txt into out_dir.
int cmd_example_a(const Config& cfg, const std::string& out_dir);

/// Interception run: emits trajectories.csv, accel.csv, actor_weights.csv,
/// iterations.csv, summary.csv and manifest.txt.
int cmd_missile(const Config& cfg, const std::string& out_dir);

/// Linear-game verification: prints the Riccati solution, runs the
/// off-policy solve on the same instance, and reports element-wise deltas
/// (oracle.csv, deltas.csv, manifest.txt).
int cmd_oracle(const Config& cfg, const std::string& out_dir);

/// Standalone data capture to dataset.txt (plus manifest.txt).
int cmd_collect(const Config& cfg, const std::string& out_dir);

/// Off-policy solve on a stored dataset; emits weights_per_iter.csv and
/// manifest.txt.
int cmd_solve(const Config& cfg, const std::string& out_dir);

}  // namespace alphapi
