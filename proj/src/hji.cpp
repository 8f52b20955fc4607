#include "alphapi/hji.hpp"

#include <cmath>
#include <stdexcept>

namespace alphapi {

void validate(const GameSpec& spec) {
  if (spec.gamma <= 0.0)
    throw std::invalid_argument("game spec: gamma must be positive");
  if (spec.r_diag.size() != spec.dyn.control_dim)
    throw std::invalid_argument("game spec: r_diag size != control_dim");
  if ((spec.r_diag.array() <= 0.0).any())
    throw std::invalid_argument("game spec: R diagonal must be positive");
}

PolicyPair extract_policies(const GameSpec& spec, const CriticFunction& V) {
  // Captured by value so the pair stays valid past the spec's scope.
  const Eigen::VectorXd r_inv = spec.r_diag.cwiseInverse();
  const double gain_w = 1.0 / (2.0 * spec.gamma * spec.gamma);

  PolicyPair pp;
  pp.control = [g = spec.dyn.control_gain, r_inv,
                V](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return -0.5 * r_inv.asDiagonal() * (g(x).transpose() * V.gradient(x));
  };
  pp.disturbance = [k = spec.dyn.disturbance_gain, gain_w,
                    V](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return gain_w * (k(x).transpose() * V.gradient(x));
  };
  return pp;
}

double hamiltonian(const GameSpec& spec, const CriticFunction& V,
                   const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& w) {
  const AffineDynamics& dyn = spec.dyn;
  const Eigen::VectorXd gv = V.gradient(x);
  const double reward = dyn.state_cost(x) + u.dot(spec.r_diag.asDiagonal() * u) -
                        spec.gamma * spec.gamma * w.squaredNorm();
  return reward + gv.dot(dyn.rhs(x, u, w));
}

double g_residual(const GameSpec& spec, const CriticFunction& V,
                  const Eigen::VectorXd& x) {
  const AffineDynamics& dyn = spec.dyn;
  const Eigen::VectorXd gv = V.gradient(x);
  const Eigen::VectorXd gTv = dyn.control_gain(x).transpose() * gv;   // g' grad V
  const Eigen::VectorXd kTv = dyn.disturbance_gain(x).transpose() * gv;
  const double quad_u = gTv.dot(spec.r_diag.cwiseInverse().asDiagonal() * gTv);
  const double quad_w = kTv.squaredNorm();
  return dyn.state_cost(x) + gv.dot(dyn.drift(x)) - 0.25 * quad_u +
         quad_w / (4.0 * spec.gamma * spec.gamma);
}

double frechet_apply(const GameSpec& spec, const CriticFunction& V,
                     const CriticFunction& Z, const Eigen::VectorXd& x) {
  const AffineDynamics& dyn = spec.dyn;
  const Eigen::VectorXd gv = V.gradient(x);
  const Eigen::VectorXd gz = Z.gradient(x);
  const Eigen::MatrixXd g = dyn.control_gain(x);
  const Eigen::MatrixXd k = dyn.disturbance_gain(x);
  const Eigen::VectorXd r_inv = spec.r_diag.cwiseInverse();
  const double g2 = spec.gamma * spec.gamma;

  const Eigen::VectorXd gTv = g.transpose() * gv;
  const Eigen::VectorXd gTz = g.transpose() * gz;
  const Eigen::VectorXd kTv = k.transpose() * gv;
  const Eigen::VectorXd kTz = k.transpose() * gz;

  const double bilinear = gz.dot(dyn.drift(x)) -
                          0.25 * gTz.dot(r_inv.asDiagonal() * gTv) -
                          0.25 * gTv.dot(r_inv.asDiagonal() * gTz) +
                          (kTv.dot(kTz) + kTz.dot(kTv)) / (4.0 * g2);

  // Closed-loop form: grad Z' (f + g u_V + k w_V).
  const Eigen::VectorXd u_v = -0.5 * r_inv.asDiagonal() * gTv;
  const Eigen::VectorXd w_v = kTv / (2.0 * g2);
  const double closed_loop = gz.dot(dyn.rhs(x, u_v, w_v));

  const double scale = 1.0 + std::abs(bilinear);
  if (std::abs(bilinear - closed_loop) > 1e-12 * scale)
    throw std::logic_error("frechet_apply: bilinear and closed-loop forms disagree");
  return bilinear;
}

double generalized_bellman_residual(const GameSpec& spec,
                                    const CriticFunction& V_next,
                                    const CriticFunction& V_cur, double alpha,
                                    const Eigen::VectorXd& x) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("generalized_bellman_residual: alpha must be in (0, 1]");
  const AffineDynamics& dyn = spec.dyn;
  const PolicyPair pol = extract_policies(spec, V_cur);
  const Eigen::VectorXd u_i = pol.control(x);
  const Eigen::VectorXd w_i = pol.disturbance(x);
  const Eigen::VectorXd flow = dyn.rhs(x, u_i, w_i);
  const double reward = dyn.state_cost(x) +
                        u_i.dot(spec.r_diag.asDiagonal() * u_i) -
                        spec.gamma * spec.gamma * w_i.squaredNorm();
  return V_next.gradient(x).dot(flow) -
         (1.0 - alpha) * V_cur.gradient(x).dot(flow) + alpha * reward;
}

}  // namespace alphapi
