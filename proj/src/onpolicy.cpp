#include "alphapi/onpolicy.hpp"

#include <cmath>
#include <stdexcept>

#include "alphapi/errors.hpp"
#include "alphapi/lq_oracle.hpp"
#include "alphapi/lstsq.hpp"
#include "alphapi/rng.hpp"

namespace alphapi {

std::vector<Eigen::VectorXd> make_state_grid(const Eigen::VectorXd& lo,
                                             const Eigen::VectorXd& hi,
                                             int per_dim) {
  if (lo.size() != hi.size() || per_dim < 1)
    throw std::invalid_argument("make_state_grid: bad arguments");
  const int n = static_cast<int>(lo.size());
  std::vector<Eigen::VectorXd> grid;
  std::vector<int> idx(n, 0);
  while (true) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
      const double t = per_dim == 1 ? 0.5 : static_cast<double>(idx[i]) / (per_dim - 1);
      x[i] = lo[i] + t * (hi[i] - lo[i]);
    }
    grid.push_back(std::move(x));
    int d = 0;
    while (d < n && ++idx[d] == per_dim) idx[d++] = 0;
    if (d == n) break;
  }
  return grid;
}

Eigen::VectorXd onpolicy_iterate(const GameSpec& spec, const BasisSet& critic,
                                 const OnPolicyConfig& cfg,
                                 const Eigen::VectorXd& W_i, int iteration) {
  validate(spec);
  const int L1 = critic.size();
  if (W_i.size() != L1)
    throw std::invalid_argument("onpolicy_iterate: weight size != critic size");
  if (!W_i.allFinite())
    throw std::invalid_argument("onpolicy_iterate: non-finite weights");
  if (cfg.windows_per_iteration <= L1)
    throw std::invalid_argument(
        "onpolicy_iterate: windows_per_iteration must exceed the critic size");
  if (cfg.init_states.empty())
    throw std::invalid_argument("onpolicy_iterate: init_states is empty");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
    throw std::invalid_argument("onpolicy_iterate: alpha must be in (0, 1]");

  const CriticFunction V_i{critic, W_i};
  const PolicyPair pol = extract_policies(spec, V_i);
  const auto w_of_t = [&pol](double, const Eigen::VectorXd& x) {
    return pol.disturbance(x);
  };

  Rng rng(cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(iteration));
  const int n_win = cfg.windows_per_iteration;
  const int n = spec.dyn.state_dim;

  Eigen::MatrixXd X(L1, n_win);   // columns rho(x(t)) - rho(x(t+dt))
  Eigen::VectorXd Y(n_win);
  const auto quad_w = quadrature_weights(cfg.substeps, cfg.dt / cfg.substeps);

  for (int c = 0; c < n_win; ++c) {
    Eigen::VectorXd x0 = cfg.init_states[c % cfg.init_states.size()];
    for (int i = 0; i < n; ++i) x0[i] += cfg.jitter * uniform_symmetric(rng);

    const auto states = integrate_feedback_window(spec.dyn, x0, pol.control,
                                                  w_of_t, cfg.dt, cfg.substeps);

    // Reward integral: Q + u_i'R u_i - gamma^2 w_i'w_i along the rollout.
    double reward = 0.0;
    for (int s = 0; s <= cfg.substeps; ++s) {
      if (quad_w[s] == 0.0) continue;
      const Eigen::VectorXd& xs = states[s];
      const Eigen::VectorXd us = pol.control(xs);
      const Eigen::VectorXd ws = pol.disturbance(xs);
      reward += quad_w[s] * (spec.dyn.state_cost(xs) +
                             us.dot(spec.r_diag.asDiagonal() * us) -
                             spec.gamma * spec.gamma * ws.squaredNorm());
    }

    const Eigen::VectorXd rho_diff = critic.eval(states.front()) - critic.eval(states.back());
    X.col(c) = rho_diff;
    Y(c) = (1.0 - cfg.alpha) * rho_diff.dot(W_i) + cfg.alpha * reward;
  }

  return solve_bls(X.transpose(), Y,
                   "Provide more or better-spread init_states.");
}

OnPolicyResult onpolicy_solve(const GameSpec& spec, const BasisSet& critic,
                              const OnPolicyConfig& cfg,
                              const Eigen::VectorXd& W_0) {
  OnPolicyResult res;
  res.W_final = W_0;
  res.weight_history.push_back(W_0);
  Eigen::VectorXd W = W_0;
  for (int i = 0; i < cfg.max_iterations; ++i) {
    const Eigen::VectorXd W_next = onpolicy_iterate(spec, critic, cfg, W, i);
    const double change = (W_next - W).norm();
    W = W_next;
    res.weight_history.push_back(W);
    res.change_norms.push_back(change);
    res.iterations = i + 1;
    if (change <= cfg.tolerance) {
      res.converged = true;
      break;
    }
  }
  res.W_final = W;
  return res;
}

Eigen::MatrixXd damped_newton_matrix_step(
    const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
    const Eigen::MatrixXd& D, const Eigen::MatrixXd& Qm,
    const Eigen::MatrixXd& R, double gamma, const Eigen::MatrixXd& P_i,
    double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("damped_newton_matrix_step: alpha must be in (0, 1]");
  const double g2 = gamma * gamma;
  const Eigen::MatrixXd R_inv = R.inverse();
  const Eigen::MatrixXd K = R_inv * B.transpose() * P_i;
  const Eigen::MatrixXd L = D.transpose() * P_i / g2;
  const Eigen::MatrixXd Ac = A - B * K + D * L;

  const Eigen::MatrixXd lyap_of_Pi = Ac.transpose() * P_i + P_i * Ac;
  const Eigen::MatrixXd reward =
      Qm + K.transpose() * R * K - g2 * L.transpose() * L;
  // Ac' P1 + P1 Ac + C = 0 with C = -(1-alpha) lyap(Pi) + alpha reward
  const Eigen::MatrixXd C = -(1.0 - alpha) * lyap_of_Pi + alpha * reward;
  return solve_lyapunov(Ac, C);
}

}  // namespace alphapi
