#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace alphapi {

using StateFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using MatrixFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
using ScalarFn = std::function<double(const Eigen::VectorXd&)>;

/// Control-affine system  xdot = f(x) + g(x) u + k(x) w  with equilibrium at
/// the origin and running state cost Q(x) >= 0, Q(0) = 0.
struct AffineDynamics {
  int state_dim = 0;        // n
  int control_dim = 0;      // m
  int disturbance_dim = 0;  // q
  StateFn drift;            // f(x), n-vector
  MatrixFn control_gain;    // g(x), n x m
  MatrixFn disturbance_gain;  // k(x), n x q
  ScalarFn state_cost;      // Q(x)

  Eigen::VectorXd rhs(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& w) const;
};

/// One sampling window [t, t+dt]: the states at uniform sub-steps (both
/// endpoints included) and the behavior inputs held constant over the window.
/// Keeping the interior states around lets later iterations re-integrate
/// running-cost terms under policies that did not exist at collection time.
struct SampleWindow {
  double t_start = 0.0;
  double dt = 0.0;
  std::vector<Eigen::VectorXd> substep_states;
  Eigen::VectorXd behavior_control;
  Eigen::VectorXd behavior_disturbance;

  const Eigen::VectorXd& initial_state() const { return substep_states.front(); }
  const Eigen::VectorXd& final_state() const { return substep_states.back(); }
  int substeps() const { return static_cast<int>(substep_states.size()) - 1; }
  double substep_size() const { return dt / substeps(); }
};

/// Classical fixed-step 4th-order integration of one window with (u, w) held
/// constant. substeps >= 2 so the window supports the quadrature rule.
/// Throws IntegrationBlowupError naming the offending time if the state
/// leaves the finite range.
SampleWindow integrate_window(const AffineDynamics& dyn,
                              const Eigen::VectorXd& x0,
                              const Eigen::VectorXd& u,
                              const Eigen::VectorXd& w, double dt,
                              int substeps, double t_start = 0.0);

/// Same integrator with state-feedback control u(x) and disturbance w(t, x)
/// applied continuously (evaluated at every stage of every sub-step).
/// Returns the sub-step states including both endpoints.
std::vector<Eigen::VectorXd> integrate_feedback_window(
    const AffineDynamics& dyn, const Eigen::VectorXd& x0, const StateFn& u_fn,
    const std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>& w_fn,
    double dt, int substeps, double t_start = 0.0);

/// Composite 4th-order quadrature of integrand(x) along the stored sub-step
/// states (Simpson, with a 3/8 tail when the interval count is odd).
/// Throws InsufficientResolutionError for windows with fewer than 3 samples.
double quadrature_over_window(const SampleWindow& win, const ScalarFn& integrand);
Eigen::VectorXd quadrature_over_window(
    const SampleWindow& win,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& integrand);

/// Node weights of the composite rule for `intervals` uniform sub-intervals
/// of width h; exposed for callers that integrate sampled values directly.
std::vector<double> quadrature_weights(int intervals, double h);

/// The 2-state nonlinear benchmark:
///   f(x) = [-x1 + x2, -0.5 x1 - 0.5 x2 + 0.5 x2 sin^2(x1)]
///   g(x) = [0, sin(x1)]',  k(x) = [0, cos(x1)]',  Q(x) = x1^2 + x2^2.
AffineDynamics make_example_a();

/// Linear-quadratic specialization: drift Ax, constant gains, cost x'Qm x.
/// Qm must be symmetric positive semidefinite within 1e-10.
AffineDynamics make_linear_game(const Eigen::MatrixXd& A,
                                const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& D,
                                const Eigen::MatrixXd& Qm);

/// Dynamics carrier for model-free learning: dimensions and state cost only,
/// zero drift and gains (never evaluated by the off-policy pipeline).
AffineDynamics make_cost_only(int state_dim, int control_dim,
                              int disturbance_dim, ScalarFn state_cost);

}  // namespace alphapi
