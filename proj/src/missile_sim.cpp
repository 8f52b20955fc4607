#include "alphapi/missile_sim.hpp"

#include <algorithm>
#include <cmath>

#include "alphapi/basis.hpp"
#include "alphapi/dynamics.hpp"
#include "alphapi/errors.hpp"
#include "alphapi/rng.hpp"

namespace alphapi {

double target_maneuver(double t, const ManeuverSpec& spec) {
  if (t < 0.0) throw std::invalid_argument("target_maneuver: t must be >= 0");
  if (!spec.enabled || t < spec.start_time) return 0.0;
  return spec.peak_accel * std::sin(2.0 * M_PI * (t - spec.start_time) / spec.period);
}

namespace {

double clamp_accel(double a, double limit) { return std::clamp(a, -limit, limit); }

// Interpolated minimum of sampled ranges: parabola through the closest three
// samples, falling back to the raw minimum at the trajectory ends.
std::pair<double, double> interpolated_min_range(const std::vector<double>& t,
                                                 const std::vector<double>& r) {
  const auto it = std::min_element(r.begin(), r.end());
  const std::size_t i = static_cast<std::size_t>(it - r.begin());
  if (i == 0 || i + 1 >= r.size()) return {r[i], t[i]};
  const double t0 = t[i - 1], t1 = t[i], t2 = t[i + 1];
  const double r0 = r[i - 1], r1 = r[i], r2 = r[i + 1];
  // Lagrange coefficients of r(t) = a tau^2 + b tau + c around t1.
  const double h0 = t0 - t1, h2 = t2 - t1;
  const double denom = h0 * h2 * (h0 - h2);
  const double a = (h2 * (r0 - r1) - h0 * (r2 - r1)) / denom;
  const double b = (h0 * h0 * (r2 - r1) - h2 * h2 * (r0 - r1)) / denom;
  if (a <= 0.0) return {r1, t1};
  const double tau = -b / (2.0 * a);
  if (tau < h0 || tau > h2) return {r1, t1};
  const double rv = r1 + b * tau + a * tau * tau;
  return {std::max(0.0, std::min(rv, r1)), t1 + tau};
}

}  // namespace

EngagementResult run_engagement(const EngagementConfig& cfg) {
  const BasisTriple bases = missile_bases();
  const double q1 = cfg.q1, q2 = cfg.q2;
  GameSpec spec;
  spec.dyn = make_cost_only(2, 1, 1, [q1, q2](const Eigen::VectorXd& x) {
    return q1 * x[0] * x[0] + q2 * x[1] * x[1];
  });
  spec.gamma = cfg.gamma;
  spec.r_diag = Eigen::VectorXd::Constant(1, cfg.r_weight);

  EngagementState state =
      make_engagement_state(cfg.missile_pos, cfg.missile_fpa, cfg.missile_speed,
                            cfg.target_pos, cfg.target_fpa, cfg.target_speed);

  EngagementResult result;
  auto record_sample = [&](double t, const EngagementState& s, double aM, double aT) {
    result.time.push_back(t);
    result.missile_pos.push_back(s.missile_pos);
    result.target_pos.push_back(s.target_pos);
    result.range.push_back(s.r);
    result.theta.push_back(s.theta);
    result.theta_dot.push_back(s.theta_dot);
    result.accel_missile.push_back(aM);
    result.accel_target.push_back(aT);
  };

  // Sub-step-resolution range track for the miss-distance estimate.
  std::vector<double> fine_t{0.0};
  std::vector<double> fine_r{state.r};

  Rng rng(cfg.seed);
  Eigen::VectorXd actor_w = Eigen::VectorXd::Zero(bases.actor.size());
  const double h = cfg.dt / cfg.substeps;

  // Admissible seed for the first solve (see seed_navigation_ratio).
  StackedWeights solve_seed = StackedWeights::zero(bases, 1, 1);
  solve_seed.actor(0, 0) =
      cfg.seed_navigation_ratio * std::abs(state.closing_rate());

  double t = 0.0;
  record_sample(t, state, 0.0, target_maneuver(0.0, cfg.maneuver));
  bool closed = false;  // closest approach reached

  bool rate_active = true;  // LOS rate above the learning threshold
  for (int cycle = 0; !closed && t < cfg.max_time; ++cycle) {
    std::vector<SampleWindow> windows;
    windows.reserve(cfg.windows_per_cycle);
    const double cycle_start = t;
    const bool exploring = cycle < cfg.exploration_cycles || rate_active;
    const double noise_amp = exploring ? cfg.exploration_amplitude : 0.0;

    for (int widx = 0; widx < cfg.windows_per_cycle && !closed; ++widx) {
      Eigen::VectorXd x(2);
      x << state.theta, state.theta_dot;
      double aM = actor_w.dot(bases.actor.eval(x));
      if (noise_amp > 0.0) aM += noise_amp * uniform_symmetric(rng);
      aM = clamp_accel(aM, cfg.accel_limit);
      const double aT = target_maneuver(t, cfg.maneuver);

      SampleWindow win;
      win.t_start = t;
      win.dt = cfg.dt;
      win.behavior_control = Eigen::VectorXd::Constant(1, aM);
      win.behavior_disturbance = Eigen::VectorXd::Constant(1, aT);
      win.substep_states.reserve(cfg.substeps + 1);
      win.substep_states.push_back(x);

      bool window_complete = true;
      for (int s = 0; s < cfg.substeps; ++s) {
        state = step_engagement(state, aM, aT, h);
        fine_t.push_back(t + (s + 1) * h);
        fine_r.push_back(state.r);
        Eigen::VectorXd xs(2);
        xs << state.theta, state.theta_dot;
        win.substep_states.push_back(xs);
        if (state.r <= kEngagementRangeGuard || state.closing_rate() > 0.0) {
          closed = true;
          window_complete = (s == cfg.substeps - 1);
          break;
        }
      }
      t = fine_t.back();
      record_sample(t, state, aM, aT);
      if (window_complete) windows.push_back(std::move(win));
    }

    if (static_cast<int>(windows.size()) < cfg.windows_per_cycle) break;

    DataSet data;
    data.fingerprint = {2, 1, 1, static_cast<int>(windows.size()),
                        cfg.dt, cfg.substeps, cfg.seed};
    data.windows = std::move(windows);

    double rate_sq = 0.0;
    int samples = 0;
    for (const auto& win : data.windows)
      for (const auto& xs : win.substep_states) {
        rate_sq += xs[1] * xs[1];
        ++samples;
      }
    rate_active = std::sqrt(rate_sq / samples) >= cfg.learn_rate_threshold;

    CycleRecord rec;
    rec.index = cycle;
    rec.t_start = cycle_start;
    try {
      const OffPolicyResult sol = offpolicy_solve(
          spec, data, bases, solve_seed, cfg.alpha, cfg.tolerance, cfg.iteration_cap);
      rec.iterations = sol.iterations;
      rec.converged = sol.converged;
      rec.critic_weights = sol.weights.critic;
      rec.weight_iterates = sol.history;
      // Adopt only solutions learned from live data whose critic is a
      // plausible value function (nonnegative on the visited states).
      bool value_ok = true;
      const CriticFunction critic{bases.critic, sol.weights.critic};
      for (const auto& win : data.windows)
        value_ok = value_ok && critic.value(win.final_state()) >= 0.0;
      if (sol.converged && rate_active && value_ok) {
        actor_w = sol.weights.actor.col(0);
        solve_seed = sol.weights;  // warm-start the next cycle
        rec.adopted = true;
      }
    } catch (const ExcitationError&) {
      // A well-guided trajectory can stop exciting the correction channels;
      // keep flying the previous actor and flag the cycle.
      rec.iterations = 1;
      rec.converged = false;
      rec.critic_weights = Eigen::VectorXd::Zero(bases.critic.size());
    }
    rec.actor_weights = actor_w;  // the weights that will fly the next cycle
    result.cycles.push_back(std::move(rec));
  }

  const auto [miss, t_min] = interpolated_min_range(fine_t, fine_r);
  result.miss_distance = miss;
  result.intercept_time = t_min;
  result.intercept = closed;
  return result;
}

}  // namespace alphapi
