#include "alphapi/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "alphapi/errors.hpp"

namespace alphapi {

Eigen::VectorXd AffineDynamics::rhs(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& u,
                                    const Eigen::VectorXd& w) const {
  return drift(x) + control_gain(x) * u + disturbance_gain(x) * w;
}

namespace {

// One classical RK4 step of xdot = rhs(t, x).
template <typename Rhs>
Eigen::VectorXd rk4_step(const Rhs& rhs, const Eigen::VectorXd& x, double t,
                         double h) {
  const Eigen::VectorXd k1 = rhs(t, x);
  const Eigen::VectorXd k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
  const Eigen::VectorXd k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
  const Eigen::VectorXd k4 = rhs(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_finite(const Eigen::VectorXd& x, double t) {
  if (!x.allFinite())
    throw IntegrationBlowupError(
        t, "integration blow-up: non-finite state at t = " + std::to_string(t));
}

}  // namespace

SampleWindow integrate_window(const AffineDynamics& dyn,
                              const Eigen::VectorXd& x0,
                              const Eigen::VectorXd& u,
                              const Eigen::VectorXd& w, double dt, int substeps,
                              double t_start) {
  if (dt <= 0.0) throw std::invalid_argument("integrate_window: dt must be positive");
  if (substeps < 2)
    throw std::invalid_argument("integrate_window: substeps must be >= 2");
  if (x0.size() != dyn.state_dim || u.size() != dyn.control_dim ||
      w.size() != dyn.disturbance_dim)
    throw std::invalid_argument("integrate_window: dimension mismatch");

  SampleWindow win;
  win.t_start = t_start;
  win.dt = dt;
  win.behavior_control = u;
  win.behavior_disturbance = w;
  win.substep_states.reserve(substeps + 1);
  win.substep_states.push_back(x0);

  const double h = dt / substeps;
  const auto rhs = [&](double, const Eigen::VectorXd& x) { return dyn.rhs(x, u, w); };
  Eigen::VectorXd x = x0;
  for (int s = 0; s < substeps; ++s) {
    const double t = t_start + s * h;
    x = rk4_step(rhs, x, t, h);
    check_finite(x, t + h);
    win.substep_states.push_back(x);
  }
  return win;
}

std::vector<Eigen::VectorXd> integrate_feedback_window(
    const AffineDynamics& dyn, const Eigen::VectorXd& x0, const StateFn& u_fn,
    const std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>& w_fn,
    double dt, int substeps, double t_start) {
  if (dt <= 0.0 || substeps < 2)
    throw std::invalid_argument("integrate_feedback_window: bad dt or substeps");

  std::vector<Eigen::VectorXd> states;
  states.reserve(substeps + 1);
  states.push_back(x0);

  const double h = dt / substeps;
  const auto rhs = [&](double t, const Eigen::VectorXd& x) {
    return dyn.rhs(x, u_fn(x), w_fn(t, x));
  };
  Eigen::VectorXd x = x0;
  for (int s = 0; s < substeps; ++s) {
    const double t = t_start + s * h;
    x = rk4_step(rhs, x, t, h);
    check_finite(x, t + h);
    states.push_back(x);
  }
  return states;
}

std::vector<double> quadrature_weights(int intervals, double h) {
  if (intervals < 2)
    throw InsufficientResolutionError(
        "quadrature: rule needs at least 2 sub-intervals");
  std::vector<double> w(intervals + 1, 0.0);
  // Composite Simpson over the even-length head; 3/8 rule over a 3-interval
  // tail when the count is odd. Both pieces are 4th order.
  int simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
  for (int i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (intervals % 2 != 0) {
    const int b = simpson_end;  // 3/8 block start
    w[b] += 3.0 * h / 8.0;
    w[b + 1] += 9.0 * h / 8.0;
    w[b + 2] += 9.0 * h / 8.0;
    w[b + 3] += 3.0 * h / 8.0;
  }
  return w;
}

double quadrature_over_window(const SampleWindow& win, const ScalarFn& integrand) {
  const int intervals = win.substeps();
  if (intervals < 2)
    throw InsufficientResolutionError(
        "quadrature: window needs at least 3 sub-step samples");
  const auto w = quadrature_weights(intervals, win.substep_size());
  double acc = 0.0;
  for (int i = 0; i <= intervals; ++i)
    if (w[i] != 0.0) acc += w[i] * integrand(win.substep_states[i]);
  return acc;
}

Eigen::VectorXd quadrature_over_window(
    const SampleWindow& win,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& integrand) {
  const int intervals = win.substeps();
  if (intervals < 2)
    throw InsufficientResolutionError(
        "quadrature: window needs at least 3 sub-step samples");
  const auto w = quadrature_weights(intervals, win.substep_size());
  Eigen::VectorXd acc;
  for (int i = 0; i <= intervals; ++i) {
    if (w[i] == 0.0) continue;
    Eigen::VectorXd v = integrand(win.substep_states[i]);
    if (acc.size() == 0) acc = Eigen::VectorXd::Zero(v.size());
    acc += w[i] * v;
  }
  return acc;
}

AffineDynamics make_example_a() {
  AffineDynamics dyn;
  dyn.state_dim = 2;
  dyn.control_dim = 1;
  dyn.disturbance_dim = 1;
  dyn.drift = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd f(2);
    const double s = std::sin(x[0]);
    f[0] = -x[0] + x[1];
    f[1] = -0.5 * x[0] - 0.5 * x[1] + 0.5 * x[1] * s * s;
    return f;
  };
  dyn.control_gain = [](const Eigen::VectorXd& x) {
    Eigen::MatrixXd g(2, 1);
    g << 0.0, std::sin(x[0]);
    return g;
  };
  dyn.disturbance_gain = [](const Eigen::VectorXd& x) {
    Eigen::MatrixXd k(2, 1);
    k << 0.0, std::cos(x[0]);
    return k;
  };
  dyn.state_cost = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  return dyn;
}

AffineDynamics make_linear_game(const Eigen::MatrixXd& A,
                                const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& D,
                                const Eigen::MatrixXd& Qm) {
  const auto n = A.rows();
  if (A.cols() != n || B.rows() != n || D.rows() != n || Qm.rows() != n ||
      Qm.cols() != n)
    throw std::invalid_argument("make_linear_game: dimension mismatch");
  if ((Qm - Qm.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("make_linear_game: Qm not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Qm);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("make_linear_game: Qm not positive semidefinite");

  AffineDynamics dyn;
  dyn.state_dim = static_cast<int>(n);
  dyn.control_dim = static_cast<int>(B.cols());
  dyn.disturbance_dim = static_cast<int>(D.cols());
  dyn.drift = [A](const Eigen::VectorXd& x) -> Eigen::VectorXd { return A * x; };
  dyn.control_gain = [B](const Eigen::VectorXd&) { return B; };
  dyn.disturbance_gain = [D](const Eigen::VectorXd&) { return D; };
  dyn.state_cost = [Qm](const Eigen::VectorXd& x) {
    return (x.transpose() * Qm * x).value();
  };
  return dyn;
}

AffineDynamics make_cost_only(int state_dim, int control_dim,
                              int disturbance_dim, ScalarFn state_cost) {
  AffineDynamics dyn;
  dyn.state_dim = state_dim;
  dyn.control_dim = control_dim;
  dyn.disturbance_dim = disturbance_dim;
  dyn.drift = [state_dim](const Eigen::VectorXd&) {
    return Eigen::VectorXd::Zero(state_dim);
  };
  dyn.control_gain = [state_dim, control_dim](const Eigen::VectorXd&) {
    return Eigen::MatrixXd::Zero(state_dim, control_dim);
  };
  dyn.disturbance_gain = [state_dim, disturbance_dim](const Eigen::VectorXd&) {
    return Eigen::MatrixXd::Zero(state_dim, disturbance_dim);
  };
  dyn.state_cost = std::move(state_cost);
  return dyn;
}

}  // namespace alphapi
