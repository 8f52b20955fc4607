#include "alphapi/engagement.hpp"

#include <cmath>
#include <stdexcept>

namespace alphapi {

double EngagementState::closing_rate() const {
  return Vt * std::cos(beta - theta) - Vm * std::cos(eta - theta);
}

void refresh_engagement_geometry(EngagementState& s) {
  const Eigen::Vector2d rel = s.target_pos - s.missile_pos;
  s.r = rel.norm();
  s.theta = std::atan2(rel.y(), rel.x());
  s.theta_dot =
      (s.Vt * std::sin(s.beta - s.theta) - s.Vm * std::sin(s.eta - s.theta)) / s.r;
}

EngagementState make_engagement_state(const Eigen::Vector2d& missile_pos,
                                      double eta, double Vm,
                                      const Eigen::Vector2d& target_pos,
                                      double beta, double Vt) {
  EngagementState s;
  s.missile_pos = missile_pos;
  s.target_pos = target_pos;
  s.eta = eta;
  s.beta = beta;
  s.Vm = Vm;
  s.Vt = Vt;
  refresh_engagement_geometry(s);
  return s;
}

namespace {

// Kinematic state vector [xm, zm, xt, zt, eta, beta].
using Kin = Eigen::Matrix<double, 6, 1>;

Kin kin_rhs(const Kin& y, double Vm, double Vt, double a_M, double a_T) {
  Kin d;
  d[0] = Vm * std::cos(y[4]);
  d[1] = Vm * std::sin(y[4]);
  d[2] = Vt * std::cos(y[5]);
  d[3] = Vt * std::sin(y[5]);
  d[4] = a_M / Vm;
  d[5] = a_T / Vt;
  return d;
}

}  // namespace

EngagementState step_engagement(const EngagementState& s, double a_M,
                                double a_T, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("step_engagement: dt must be positive");
  if (s.r <= kEngagementRangeGuard)
    throw std::domain_error(
        "step_engagement: range at or below guard, engagement is terminal");

  Kin y;
  y << s.missile_pos.x(), s.missile_pos.y(), s.target_pos.x(), s.target_pos.y(),
      s.eta, s.beta;
  const auto rhs = [&](const Kin& yy) { return kin_rhs(yy, s.Vm, s.Vt, a_M, a_T); };
  const Kin k1 = rhs(y);
  const Kin k2 = rhs(y + 0.5 * dt * k1);
  const Kin k3 = rhs(y + 0.5 * dt * k2);
  const Kin k4 = rhs(y + dt * k3);
  y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

  EngagementState out = s;
  out.missile_pos = {y[0], y[1]};
  out.target_pos = {y[2], y[3]};
  out.eta = y[4];
  out.beta = y[5];
  refresh_engagement_geometry(out);
  return out;
}

}  // namespace alphapi
