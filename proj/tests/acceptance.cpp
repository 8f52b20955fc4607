// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line each. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "alphapi/basis.hpp"
#include "alphapi/cli.hpp"
#include "alphapi/config.hpp"
#include "alphapi/dynamics.hpp"
#include "alphapi/hji.hpp"
#include "alphapi/lq_oracle.hpp"
#include "alphapi/lstsq.hpp"
#include "alphapi/missile_sim.hpp"
#include "alphapi/offpolicy.hpp"
#include "alphapi/onpolicy.hpp"
#include "alphapi/rng.hpp"

using namespace alphapi;
namespace fs = std::filesystem;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) return "<missing " + p.string() + ">";
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

struct LinearGame {
  Eigen::MatrixXd A{2, 2}, B{2, 1}, D{2, 1}, Qm{2, 2};
  double gamma = 2.0;
  GameSpec spec;
  BasisTriple bases{quadratic_basis(2), linear_basis(2), linear_basis(2)};

  LinearGame() {
    A << 0, 1, -1, -1;
    B << 0, 1;
    D << 0, 1;
    Qm = Eigen::MatrixXd::Identity(2, 2);
    spec = GameSpec{make_linear_game(A, B, D, Qm), gamma,
                    Eigen::VectorXd::Constant(1, 1.0)};
  }
};

// ---------------------------------------------------------------------------
// 1. Off-policy iteration vs the Riccati oracle, three damping steps.
std::string criterion_oracle_equivalence() {
  const LinearGame lg;
  const GareSolution oracle = solve_gare(lg.A, lg.B, lg.D, lg.Qm,
                                         Eigen::MatrixXd::Identity(1, 1), lg.gamma);
  const DataSet data = collect(lg.spec, vec2(0.5, -0.5), 80, 0.05, 10,
                               uniform_behavior(1, 1), 1);
  for (double alpha : {0.3, 0.6, 1.0}) {
    const double t0 = now_seconds();
    const OffPolicyResult res =
        offpolicy_solve(lg.spec, data, lg.bases,
                        StackedWeights::zero(lg.bases, 1, 1), alpha, 1e-9, 300);
    const double elapsed = now_seconds() - t0;
    if (!res.converged)
      return "alpha " + std::to_string(alpha) + " did not converge";
    if (elapsed >= 10.0)
      return "alpha " + std::to_string(alpha) + " took " +
             std::to_string(elapsed) + " s (>= 10 s)";
    const Eigen::MatrixXd P =
        quadratic_weights_to_matrix(lg.bases.critic, res.weights.critic);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (std::abs(P(i, j) - oracle.P(i, j)) > 1e-3 * std::abs(oracle.P(i, j)))
          return "alpha " + std::to_string(alpha) + ": P(" + std::to_string(i) +
                 "," + std::to_string(j) + ") off by " +
                 std::to_string(std::abs(P(i, j) - oracle.P(i, j)));
  }
  return {};
}

// ---------------------------------------------------------------------------
// 2. One on-policy iteration equals the damped-Newton matrix step.
std::string criterion_matrix_step_equivalence() {
  const LinearGame lg;
  const BasisSet critic = quadratic_basis(2);
  Eigen::MatrixXd P_i(2, 2);
  P_i << 1.0, 0.25, 0.25, 1.0;
  const Eigen::VectorXd W_i = matrix_to_quadratic_weights(critic, P_i);

  OnPolicyConfig cfg;
  cfg.dt = 0.02;
  cfg.substeps = 10;
  cfg.windows_per_iteration = 60;
  cfg.init_states = make_state_grid(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1), 5);
  cfg.jitter = 0.05;
  cfg.seed = 42;

  for (double alpha : {0.3, 1.0}) {
    cfg.alpha = alpha;
    const Eigen::VectorXd W_next = onpolicy_iterate(lg.spec, critic, cfg, W_i);
    const Eigen::MatrixXd P_data = quadratic_weights_to_matrix(critic, W_next);
    const Eigen::MatrixXd P_ref = damped_newton_matrix_step(
        lg.A, lg.B, lg.D, lg.Qm, Eigen::MatrixXd::Identity(1, 1), lg.gamma, P_i,
        alpha);
    const double err = (P_data - P_ref).cwiseAbs().maxCoeff();
    if (err > 1e-4)
      return "alpha " + std::to_string(alpha) + ": max |dP| = " + std::to_string(err);
  }
  return {};
}

// ---------------------------------------------------------------------------
// 3. alpha = 1 degeneration to the undamped target assembly.
std::string criterion_alpha_one_degeneration() {
  const LinearGame lg;
  const DataSet data = collect(lg.spec, vec2(0.5, -0.5), 80, 0.05, 10,
                               uniform_behavior(1, 1), 2);
  StackedWeights W_i = StackedWeights::zero(lg.bases, 1, 1);
  W_i.critic << 0.4, 0.1, 0.8;
  W_i.actor.col(0) << -0.3, 0.2;
  W_i.disturbance.col(0) << 0.05, -0.1;

  // Off-policy: the undamped integral-RL targets, coded independently.
  const auto [Pi, Lambda] = assemble_features(lg.spec, data, lg.bases, W_i, 1.0);
  for (int c = 0; c < static_cast<int>(data.windows.size()); ++c) {
    const SampleWindow& win = data.windows[c];
    const double reward = quadrature_over_window(win, [&](const Eigen::VectorXd& x) {
      const Eigen::VectorXd phi = lg.bases.actor.eval(x);
      const Eigen::VectorXd vrp = lg.bases.disturbance.eval(x);
      const double u_i = W_i.actor.col(0).dot(phi);
      const double w_i = W_i.disturbance.col(0).dot(vrp);
      return lg.spec.dyn.state_cost(x) + u_i * u_i -
             lg.gamma * lg.gamma * w_i * w_i;
    });
    if (Lambda(c) != -reward)
      return "window " + std::to_string(c) + ": lambda differs from -Int reward by " +
             std::to_string(Lambda(c) + reward);
  }

  // On-policy: jitter-free rollouts are replicable, so the undamped targets
  // can be rebuilt outside the implementation and solved with the same BLS.
  const BasisSet critic = quadratic_basis(2);
  Eigen::MatrixXd P_i(2, 2);
  P_i << 0.8, 0.1, 0.1, 1.2;
  const Eigen::VectorXd W_on = matrix_to_quadratic_weights(critic, P_i);
  OnPolicyConfig cfg;
  cfg.alpha = 1.0;
  cfg.dt = 0.02;
  cfg.substeps = 10;
  cfg.windows_per_iteration = 40;
  cfg.init_states = make_state_grid(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1), 4);
  cfg.jitter = 0.0;
  const Eigen::VectorXd W_impl = onpolicy_iterate(lg.spec, critic, cfg, W_on);

  const CriticFunction V{critic, W_on};
  const PolicyPair pol = extract_policies(lg.spec, V);
  const auto w_fn = [&](double, const Eigen::VectorXd& x) {
    return pol.disturbance(x);
  };
  Eigen::MatrixXd X(cfg.windows_per_iteration, critic.size());
  Eigen::VectorXd Y(cfg.windows_per_iteration);
  for (int c = 0; c < cfg.windows_per_iteration; ++c) {
    const Eigen::VectorXd x0 = cfg.init_states[c % cfg.init_states.size()];
    const auto states = integrate_feedback_window(lg.spec.dyn, x0, pol.control,
                                                  w_fn, cfg.dt, cfg.substeps);
    SampleWindow win;
    win.dt = cfg.dt;
    win.substep_states = states;
    X.row(c) = (critic.eval(states.front()) - critic.eval(states.back())).transpose();
    Y(c) = quadrature_over_window(win, [&](const Eigen::VectorXd& x) {
      const Eigen::VectorXd u = pol.control(x);
      const Eigen::VectorXd w = pol.disturbance(x);
      return lg.spec.dyn.state_cost(x) + u.squaredNorm() -
             lg.gamma * lg.gamma * w.squaredNorm();
    });
  }
  const Eigen::VectorXd W_ref = solve_bls(X, Y);
  const double err = (W_impl - W_ref).cwiseAbs().maxCoeff();
  if (err > 1e-13 * (1.0 + W_ref.cwiseAbs().maxCoeff()))
    return "on-policy undamped weights differ by " + std::to_string(err);
  return {};
}

// ---------------------------------------------------------------------------
// 4. Nonlinear benchmark reproduction across seeds, via the CLI command.
// The published critic vector is associated to the basis functions in the
// order that solves the design equation (x1^2, x1x2, x2^2, x1^4, x2^4);
// read against the printed activation order it has a residual as large as
// the zero function's and no run can approach it.
std::string criterion_example_a(const fs::path& tmp) {
  Eigen::VectorXd wc_published(5);
  wc_published << 0.5215, 1.1289, -0.0298, -0.0987, 0.0245;

  const double t0 = now_seconds();
  for (std::uint64_t seed : {2ull, 4ull, 6ull}) {
    Config cfg;
    cfg.set_u64("learner.seed", seed);
    const fs::path out = tmp / ("example_a_seed" + std::to_string(seed));
    const int rc = cmd_example_a(cfg, out.string());
    if (rc != kExitOk) return "seed " + std::to_string(seed) + ": exit code " +
                              std::to_string(rc);
    const Config manifest = Config::load_file((out / "manifest.txt").string());
    if (!manifest.get_bool("result.converged", false))
      return "seed " + std::to_string(seed) + " did not converge";
    const int iters = manifest.get_int("result.iterations", 1000);
    if (iters > 100)
      return "seed " + std::to_string(seed) + " took " + std::to_string(iters) +
             " iterations (> 100)";
    const Eigen::VectorXd wc =
        manifest.get_vector("result.critic_weights", Eigen::VectorXd());
    const double dist = (wc - wc_published).cwiseAbs().maxCoeff();
    if (dist > 0.15)
      return "seed " + std::to_string(seed) + ": critic inf-norm distance " +
             std::to_string(dist) + " (> 0.15)";
    const double att = manifest.get_double("result.final_attenuation", 10.0);
    if (att > 0.7)
      return "seed " + std::to_string(seed) + ": attenuation " +
             std::to_string(att) + " (> 0.7)";
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed >= 30.0) return "runtime " + std::to_string(elapsed) + " s (>= 30 s)";
  return {};
}

// ---------------------------------------------------------------------------
// 5. Converged weights do not depend on the damping step.
std::string criterion_alpha_invariance() {
  const GameSpec spec{make_example_a(), 2.0, Eigen::VectorXd::Constant(1, 1.0)};
  const BasisTriple bases = example_a_bases();
  const DataSet data = collect(spec, vec2(0.4, 0.5), 50, 0.05, 10,
                               uniform_behavior(1, 1), 1);
  const OffPolicyResult a = offpolicy_solve(
      spec, data, bases, StackedWeights::zero(bases, 1, 1), 0.3, 1e-7, 100);
  const OffPolicyResult b = offpolicy_solve(
      spec, data, bases, StackedWeights::zero(bases, 1, 1), 1.0, 1e-7, 100);
  if (!a.converged || !b.converged) return "a solve did not converge";
  const double rel = (a.weights.stacked() - b.weights.stacked()).norm() /
                     (1.0 + a.weights.stacked().norm());
  if (rel > 1e-3) return "relative weight gap " + std::to_string(rel);
  return {};
}

// ---------------------------------------------------------------------------
// 6. Numerical hygiene: gradients, differentials, integrator order, saddle.
std::string criterion_numerical_hygiene() {
  Rng rng(123);

  // Basis gradients vs central differences.
  const BasisTriple ex = example_a_bases();
  for (const BasisSet& b : {ex.critic, ex.actor, missile_bases().critic}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x = vec2(uniform_symmetric(rng), uniform_symmetric(rng));
      const Eigen::MatrixXd g = b.eval_gradient(x);
      for (int i = 0; i < 2; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += 1e-5;
        xm[i] -= 1e-5;
        const Eigen::VectorXd fd = (b.eval(xp) - b.eval(xm)) / 2e-5;
        for (int j = 0; j < b.size(); ++j)
          if (std::abs(g(j, i) - fd[j]) > 1e-6 * std::max(1.0, std::abs(fd[j])))
            return "basis gradient mismatch at term " + std::to_string(j);
      }
    }
  }

  // Frechet differential vs directional finite differences.
  const GameSpec spec{make_example_a(), 2.0, Eigen::VectorXd::Constant(1, 1.0)};
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd wv(5), wz(5);
    for (int i = 0; i < 5; ++i) {
      wv[i] = uniform_symmetric(rng);
      wz[i] = uniform_symmetric(rng);
    }
    const CriticFunction V{ex.critic, wv};
    const CriticFunction Z{ex.critic, wz};
    const Eigen::VectorXd x = vec2(uniform_symmetric(rng), uniform_symmetric(rng));
    const double h = 1e-5;
    const CriticFunction Vp{ex.critic, wv + h * wz};
    const CriticFunction Vm{ex.critic, wv - h * wz};
    const double fd = (g_residual(spec, Vp, x) - g_residual(spec, Vm, x)) / (2.0 * h);
    const double an = frechet_apply(spec, V, Z, x);
    if (std::abs(an - fd) > 1e-6 * (1.0 + std::abs(fd)))
      return "Frechet differential off by " + std::to_string(std::abs(an - fd));
  }

  // Integrator order on xdot = x.
  AffineDynamics exp_dyn;
  exp_dyn.state_dim = 1;
  exp_dyn.control_dim = 0;
  exp_dyn.disturbance_dim = 0;
  exp_dyn.drift = [](const Eigen::VectorXd& x) { return x; };
  exp_dyn.control_gain = [](const Eigen::VectorXd&) { return Eigen::MatrixXd(1, 0); };
  exp_dyn.disturbance_gain = [](const Eigen::VectorXd&) { return Eigen::MatrixXd(1, 0); };
  exp_dyn.state_cost = [](const Eigen::VectorXd&) { return 0.0; };
  Eigen::VectorXd one(1);
  one << 1.0;
  double prev = 0.0;
  for (int substeps : {8, 16, 32, 64}) {
    const SampleWindow win = integrate_window(exp_dyn, one, Eigen::VectorXd(0),
                                              Eigen::VectorXd(0), 1.0, substeps);
    const double err = std::abs(win.final_state()[0] - std::exp(1.0));
    if (prev > 0.0 && prev / err < 8.0)
      return "integrator order check: ratio " + std::to_string(prev / err);
    prev = err;
  }

  // Saddle identity.
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd wv(5);
    for (int i = 0; i < 5; ++i) wv[i] = uniform_symmetric(rng);
    const CriticFunction V{ex.critic, wv};
    const PolicyPair pp = extract_policies(spec, V);
    const Eigen::VectorXd x = vec2(uniform_symmetric(rng), uniform_symmetric(rng));
    const double hml = hamiltonian(spec, V, x, pp.control(x), pp.disturbance(x));
    const double res = g_residual(spec, V, x);
    if (std::abs(hml - res) > 1e-12 * (1.0 + std::abs(res)))
      return "saddle identity off by " + std::to_string(std::abs(hml - res));
  }
  return {};
}

// ---------------------------------------------------------------------------
// 7. Interception experiment bounds.
std::string criterion_missile() {
  const double t0 = now_seconds();
  EngagementConfig cfg;  // 9 g weaving target
  const EngagementResult maneuvering = run_engagement(cfg);
  const double elapsed = now_seconds() - t0;
  if (!maneuvering.intercept) return "maneuvering target: no intercept";
  if (maneuvering.miss_distance > 5.0)
    return "maneuvering target: miss " + std::to_string(maneuvering.miss_distance) +
           " m (> 5 m)";
  for (const auto& c : maneuvering.cycles)
    if (c.iterations > 60)
      return "cycle " + std::to_string(c.index) + " used " +
             std::to_string(c.iterations) + " iterations";
  if (elapsed >= 120.0)
    return "engagement took " + std::to_string(elapsed) + " s (>= 2 min)";

  EngagementConfig quiet = cfg;
  quiet.maneuver.enabled = false;
  const EngagementResult straight = run_engagement(quiet);
  if (!straight.intercept) return "non-maneuvering target: no intercept";
  if (straight.miss_distance >= 1.0)
    return "non-maneuvering target: miss " +
           std::to_string(straight.miss_distance) + " m (>= 1 m)";
  for (const auto& c : straight.cycles)
    if (c.iterations > 60)
      return "quiet cycle " + std::to_string(c.index) + " used " +
             std::to_string(c.iterations) + " iterations";
  return {};
}

// ---------------------------------------------------------------------------
// 8. Repeated runs produce bit-identical CSV artifacts.
std::string criterion_determinism(const fs::path& tmp) {
  // example-a, twice from the same written manifest.
  Config cfg;
  cfg.set_u64("learner.seed", 7);
  if (cmd_example_a(cfg, (tmp / "det_a1").string()) != kExitOk)
    return "example-a run 1 failed";
  const Config manifest = Config::load_file((tmp / "det_a1" / "manifest.txt").string());
  if (cmd_example_a(manifest, (tmp / "det_a2").string()) != kExitOk)
    return "example-a run 2 failed";
  for (const char* name : {"weights_per_iter.csv", "trajectory.csv", "inputs.csv",
                           "attenuation.csv"})
    if (slurp(tmp / "det_a1" / name) != slurp(tmp / "det_a2" / name))
      return std::string("example-a CSV differs: ") + name;

  // oracle, twice.
  if (cmd_oracle(Config(), (tmp / "det_o1").string()) != kExitOk)
    return "oracle run 1 failed";
  if (cmd_oracle(Config(), (tmp / "det_o2").string()) != kExitOk)
    return "oracle run 2 failed";
  for (const char* name : {"oracle.csv", "deltas.csv"})
    if (slurp(tmp / "det_o1" / name) != slurp(tmp / "det_o2" / name))
      return std::string("oracle CSV differs: ") + name;

  // missile, twice (shortened horizon keeps the suite quick).
  Config mcfg;
  mcfg.set_u64("engagement.seed", 3);
  if (cmd_missile(mcfg, (tmp / "det_m1").string()) != kExitOk)
    return "missile run 1 failed";
  const Config mmanifest = Config::load_file((tmp / "det_m1" / "manifest.txt").string());
  if (cmd_missile(mmanifest, (tmp / "det_m2").string()) != kExitOk)
    return "missile run 2 failed";
  for (const char* name : {"trajectories.csv", "accel.csv", "actor_weights.csv",
                           "iterations.csv", "summary.csv"})
    if (slurp(tmp / "det_m1" / name) != slurp(tmp / "det_m2" / name))
      return std::string("missile CSV differs: ") + name;
  return {};
}

}  // namespace

int main() {
  const fs::path tmp = fs::temp_directory_path() / "alphapi_acceptance";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  struct Criterion {
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1. oracle equivalence (off-policy vs GARE, alpha 0.3/0.6/1.0, 1e-3)",
       [] { return criterion_oracle_equivalence(); }},
      {"2. matrix-step equivalence (on-policy iterate vs damped Newton, 1e-4)",
       [] { return criterion_matrix_step_equivalence(); }},
      {"3. undamped degeneration (alpha = 1 targets, machine precision)",
       [] { return criterion_alpha_one_degeneration(); }},
      {"4. nonlinear benchmark reproduction (3 seeds, 0.15 band, attenuation 0.7)",
       [&] { return criterion_example_a(tmp); }},
      {"5. fixed-point invariance in alpha (1e-3 relative)",
       [] { return criterion_alpha_invariance(); }},
      {"6. numerical hygiene (gradients, differentials, order, saddle)",
       [] { return criterion_numerical_hygiene(); }},
      {"7. interception bounds (5 m / 1 m, 60 iterations, 2 min)",
       [] { return criterion_missile(); }},
      {"8. determinism (bit-identical CSV artifacts)",
       [&] { return criterion_determinism(tmp); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      std::cout << "PASS  " << c.name << "\n";
    } else {
      std::cout << "FAIL  " << c.name << " -- " << detail << "\n";
      ++failures;
    }
  }
  fs::remove_all(tmp);
  return failures;
}
