#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "alphapi/basis.hpp"
#include "alphapi/hji.hpp"

namespace alphapi {

/// Settings for the on-policy damped policy iteration. Each iteration rolls
/// out fresh windows under the current policies and solves the discretized
/// evaluation equation by batch least squares.
struct OnPolicyConfig {
  double alpha = 1.0;         // damping step in (0, 1]
  double dt = 0.05;           // window length (s)
  int substeps = 10;          // integrator sub-steps per window
  int windows_per_iteration = 0;  // strictly more than the critic size
  std::vector<Eigen::VectorXd> init_states;  // grid covering the domain
  double jitter = 0.05;       // uniform jitter amplitude on init states
  double tolerance = 1e-7;    // stop on ||W_{i+1} - W_i||_2
  int max_iterations = 100;
  std::uint64_t seed = 1;
};

/// Uniform grid of points over the box [lo, hi], per_dim nodes per axis.
std::vector<Eigen::VectorXd> make_state_grid(const Eigen::VectorXd& lo,
                                             const Eigen::VectorXd& hi,
                                             int per_dim);

/// One evaluation-and-improvement sweep: rolls out windows under the greedy
/// policies of W_i, assembles the regression with columns
/// rho(x(t)) - rho(x(t+dt)) and damped targets, and returns the batch
/// least-squares W_{i+1}. `iteration` varies the rollout jitter between
/// sweeps of a solve.
Eigen::VectorXd onpolicy_iterate(const GameSpec& spec, const BasisSet& critic,
                                 const OnPolicyConfig& cfg,
                                 const Eigen::VectorXd& W_i, int iteration = 0);

struct OnPolicyResult {
  Eigen::VectorXd W_final;
  bool converged = false;
  int iterations = 0;
  std::vector<Eigen::VectorXd> weight_history;  // includes W_0
  std::vector<double> change_norms;             // per completed iteration
};

/// Iterates onpolicy_iterate until the weight change drops below tolerance
/// or the iteration cap is reached. A non-converged run is flagged, not an
/// error; the history is always populated.
OnPolicyResult onpolicy_solve(const GameSpec& spec, const BasisSet& critic,
                              const OnPolicyConfig& cfg,
                              const Eigen::VectorXd& W_0);

/// The matrix form of one damped evaluation step on the linear-quadratic
/// game with V = x'Px: solves the Lyapunov-type equation
///   Ac' P1 + P1 Ac = (1-alpha)(Ac' Pi + Pi Ac)
///                    - alpha (Qm + Pi B R^-1 B' Pi - (1/gamma^2) Pi D D' Pi)
/// with Ac the closed-loop drift under the policies of Pi. Serves as the
/// test-side oracle for the equivalence with onpolicy_iterate.
Eigen::MatrixXd damped_newton_matrix_step(
    const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
    const Eigen::MatrixXd& D, const Eigen::MatrixXd& Qm,
    const Eigen::MatrixXd& R, double gamma, const Eigen::MatrixXd& P_i,
    double alpha);

}  // namespace alphapi
