#include "alphapi/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "alphapi/basis.hpp"
#include "alphapi/dynamics.hpp"
#include "alphapi/errors.hpp"
#include "alphapi/hji.hpp"
#include "alphapi/lq_oracle.hpp"
#include "alphapi/missile_sim.hpp"
#include "alphapi/offpolicy.hpp"

namespace alphapi {

namespace {

constexpr const char* kToolVersion = "1.0.0";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header) {
    os_.open(path);
    if (!os_) throw ConfigError("cannot open " + path.string() + " for writing");
    os_ << header << '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) os_ << ',';
      os_ << fmt(values[i]);
    }
    os_ << '\n';
  }

 private:
  std::ofstream os_;
};

std::string basis_line(const BasisSet& b) {
  std::string s;
  for (int j = 0; j < b.size(); ++j) {
    if (j) s += "; ";
    const auto& t = b.terms()[j];
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(t[i]);
    }
  }
  return s;
}

BasisSet basis_from_cfg(const Config& cfg, const std::string& key,
                        const BasisSet& fallback, int state_dim) {
  if (!cfg.has(key)) return fallback;
  std::string text = cfg.get_string(key, "");
  for (char& c : text)
    if (c == ';') c = '\n';
  return BasisSet::from_text(text, state_dim);
}

void write_manifest(const std::filesystem::path& out_dir, const Config& manifest) {
  std::ofstream os(out_dir / "manifest.txt");
  if (!os) throw ConfigError("cannot write manifest");
  os << manifest.to_text();
}

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  std::filesystem::path p(out_dir);
  std::filesystem::create_directories(p);
  return p;
}

std::vector<std::string> stacked_names(const BasisTriple& bases, int m, int q) {
  std::vector<std::string> names;
  for (int i = 1; i <= bases.critic.size(); ++i)
    names.push_back("wc" + std::to_string(i));
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i <= bases.actor.size(); ++i)
      names.push_back(m == 1 ? "wa" + std::to_string(i)
                             : "wa" + std::to_string(j) + "_" + std::to_string(i));
  for (int k = 1; k <= q; ++k)
    for (int i = 1; i <= bases.disturbance.size(); ++i)
      names.push_back(q == 1 ? "wd" + std::to_string(i)
                             : "wd" + std::to_string(k) + "_" + std::to_string(i));
  return names;
}

void write_weight_history(const std::filesystem::path& path,
                          const std::vector<Eigen::VectorXd>& history,
                          const std::vector<std::string>& names) {
  std::string header = "iteration";
  for (const auto& n : names) header += "," + n;
  CsvWriter csv(path, header);
  for (std::size_t i = 0; i < history.size(); ++i) {
    std::vector<double> row{static_cast<double>(i)};
    for (Eigen::Index j = 0; j < history[i].size(); ++j)
      row.push_back(history[i][j]);
    csv.row(row);
  }
}

}  // namespace

int cmd_example_a(const Config& cfg, const std::string& out_dir) {
  const auto out = prepare_out_dir(out_dir);

  const double gamma = cfg.get_double("game.gamma", 2.0);
  const Eigen::VectorXd r_diag =
      cfg.get_vector("game.r_diag", Eigen::VectorXd::Constant(1, 1.0));
  const double alpha = cfg.get_double("learner.alpha", 0.3);
  const double dt = cfg.get_double("learner.dt", 0.05);
  const int substeps = cfg.get_int("learner.substeps", 10);
  const int windows = cfg.get_int("learner.windows", 50);
  Eigen::VectorXd x0(2);
  x0 << 0.4, 0.5;
  x0 = cfg.get_vector("learner.x0", x0);
  const double tolerance = cfg.get_double("learner.tolerance", 1e-7);
  const int cap = cfg.get_int("learner.max_iterations", 100);
  const std::uint64_t seed = cfg.get_u64("learner.seed", 1);
  const double behavior_amp = cfg.get_double("learner.behavior_amplitude", 1.0);
  const double replay_horizon = cfg.get_double("replay.horizon", 10.0);
  const double dist_amp = cfg.get_double("replay.disturbance_amplitude", 5.0);
  const double dist_decay = cfg.get_double("replay.disturbance_decay", 0.2);

  GameSpec spec{make_example_a(), gamma, r_diag};
  const BasisTriple defaults = example_a_bases();
  const BasisTriple bases{
      basis_from_cfg(cfg, "bases.critic", defaults.critic, 2),
      basis_from_cfg(cfg, "bases.actor", defaults.actor, 2),
      basis_from_cfg(cfg, "bases.disturbance", defaults.disturbance, 2)};

  const DataSet data = collect(spec, x0, windows, dt, substeps,
                               uniform_behavior(1, 1, behavior_amp, behavior_amp),
                               seed);
  const OffPolicyResult sol =
      offpolicy_solve(spec, data, bases, StackedWeights::zero(bases, 1, 1),
                      alpha, tolerance, cap);

  write_weight_history(out / "weights_per_iter.csv", sol.history,
                       stacked_names(bases, 1, 1));

  // Trajectory and inputs over the collection phase.
  CsvWriter traj(out / "trajectory.csv", "t_s,x1,x2,phase");
  CsvWriter inputs(out / "inputs.csv", "t_s,u,w,phase");
  for (const auto& win : data.windows) {
    const double h = win.substep_size();
    const int first = win.t_start == 0.0 ? 0 : 1;  // skip duplicated endpoints
    for (int s = first; s <= win.substeps(); ++s) {
      const auto& x = win.substep_states[s];
      traj.row({win.t_start + s * h, x[0], x[1], 0.0});
      inputs.row({win.t_start + s * h, win.behavior_control[0],
                  win.behavior_disturbance[0], 0.0});
    }
  }

  // Closed-loop replay under the decaying cosine disturbance. The gain
  // condition is defined for trajectories leaving the origin, so the replay
  // restarts there.
  const double t0 = windows * dt;
  const auto u_fn = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return sol.weights.control(bases, x);
  };
  const auto w_fn = [&](double t, const Eigen::VectorXd&) -> Eigen::VectorXd {
    return Eigen::VectorXd::Constant(
        1, dist_amp * std::exp(-dist_decay * (t - t0)) * std::cos(t - t0));
  };

  CsvWriter atten(out / "attenuation.csv", "t_s,attenuation_level");
  double num = 0.0, den = 0.0, att_final = 0.0;
  bool replay_ok = true;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
  const int replay_steps = static_cast<int>(std::round(replay_horizon / dt));
  double prev_num_rate = spec.dyn.state_cost(x) +
                         u_fn(x).dot(spec.r_diag.asDiagonal() * u_fn(x));
  double prev_den_rate = w_fn(t0, x).squaredNorm();
  try {
    for (int k = 0; k < replay_steps; ++k) {
      const double t_step = t0 + k * dt;
      const auto states =
          integrate_feedback_window(spec.dyn, x, u_fn, w_fn, dt, substeps, t_step);
      const double h = dt / substeps;
      for (int s = 1; s <= substeps; ++s) {
        const double t = t_step + s * h;
        const Eigen::VectorXd& xs = states[s];
        const Eigen::VectorXd us = u_fn(xs);
        const Eigen::VectorXd ws = w_fn(t, xs);
        traj.row({t, xs[0], xs[1], 1.0});
        inputs.row({t, us[0], ws[0], 1.0});
        const double num_rate =
            spec.dyn.state_cost(xs) + us.dot(spec.r_diag.asDiagonal() * us);
        const double den_rate = ws.squaredNorm();
        num += 0.5 * h * (prev_num_rate + num_rate);
        den += 0.5 * h * (prev_den_rate + den_rate);
        prev_num_rate = num_rate;
        prev_den_rate = den_rate;
        // Fraction of the allowed gain actually used: the energy ratio is
        // measured against gamma^2 times the disturbance energy.
        att_final = den > 0.0 ? std::sqrt(num / (gamma * gamma * den)) : 0.0;
        atten.row({t, att_final});
      }
      x = states.back();
    }
  } catch (const IntegrationBlowupError& e) {
    std::cerr << "replay aborted: " << e.what() << '\n';
    replay_ok = false;
  }

  Config manifest;
  manifest.set_string("run.command", "example-a");
  manifest.set_string("run.version", kToolVersion);
  manifest.set_double("game.gamma", gamma);
  manifest.set_vector("game.r_diag", r_diag);
  manifest.set_double("learner.alpha", alpha);
  manifest.set_double("learner.dt", dt);
  manifest.set_int("learner.substeps", substeps);
  manifest.set_int("learner.windows", windows);
  manifest.set_vector("learner.x0", x0);
  manifest.set_double("learner.tolerance", tolerance);
  manifest.set_int("learner.max_iterations", cap);
  manifest.set_u64("learner.seed", seed);
  manifest.set_double("learner.behavior_amplitude", behavior_amp);
  manifest.set_double("replay.horizon", replay_horizon);
  manifest.set_double("replay.disturbance_amplitude", dist_amp);
  manifest.set_double("replay.disturbance_decay", dist_decay);
  manifest.set_string("bases.critic", basis_line(bases.critic));
  manifest.set_string("bases.actor", basis_line(bases.actor));
  manifest.set_string("bases.disturbance", basis_line(bases.disturbance));
  manifest.set_bool("result.converged", sol.converged);
  manifest.set_int("result.iterations", sol.iterations);
  manifest.set_vector("result.critic_weights", sol.weights.critic);
  manifest.set_vector("result.actor_weights", sol.weights.actor.col(0));
  manifest.set_vector("result.disturbance_weights", sol.weights.disturbance.col(0));
  manifest.set_double("result.final_attenuation", att_final);
  manifest.set_bool("result.replay_completed", replay_ok);
  write_manifest(out, manifest);

  std::cout << "example-a: " << (sol.converged ? "converged" : "NOT converged")
            << " in " << sol.iterations << " iterations; final attenuation "
            << fmt(att_final) << "\n";
  return sol.converged && replay_ok ? kExitOk : kExitNotConverged;
}

int cmd_missile(const Config& cfg, const std::string& out_dir) {
  const auto out = prepare_out_dir(out_dir);

  EngagementConfig ec;
  ec.missile_pos = cfg.get_vector("engagement.missile_pos", ec.missile_pos);
  ec.missile_fpa = cfg.get_double("engagement.missile_fpa_deg", 0.0) * M_PI / 180.0;
  ec.missile_speed = cfg.get_double("engagement.missile_speed", ec.missile_speed);
  ec.target_pos = cfg.get_vector("engagement.target_pos", ec.target_pos);
  ec.target_fpa = cfg.get_double("engagement.target_fpa_deg", 170.0) * M_PI / 180.0;
  ec.target_speed = cfg.get_double("engagement.target_speed", ec.target_speed);
  ec.q1 = cfg.get_double("engagement.q1", ec.q1);
  ec.q2 = cfg.get_double("engagement.q2", ec.q2);
  ec.r_weight = cfg.get_double("engagement.r", ec.r_weight);
  ec.gamma = cfg.get_double("engagement.gamma", ec.gamma);
  ec.dt = cfg.get_double("engagement.dt", ec.dt);
  ec.windows_per_cycle = cfg.get_int("engagement.windows_per_cycle", ec.windows_per_cycle);
  ec.substeps = cfg.get_int("engagement.substeps", ec.substeps);
  ec.alpha = cfg.get_double("engagement.alpha", ec.alpha);
  ec.tolerance = cfg.get_double("engagement.tolerance", ec.tolerance);
  ec.iteration_cap = cfg.get_int("engagement.iteration_cap", ec.iteration_cap);
  ec.exploration_amplitude =
      cfg.get_double("engagement.exploration_amplitude", ec.exploration_amplitude);
  ec.exploration_cycles = cfg.get_int("engagement.exploration_cycles", ec.exploration_cycles);
  ec.accel_limit = cfg.get_double("engagement.accel_limit_g", 30.0) * 9.81;
  ec.max_time = cfg.get_double("engagement.max_time", ec.max_time);
  ec.maneuver.enabled = cfg.get_bool("engagement.maneuver_enabled", true);
  ec.maneuver.start_time = cfg.get_double("engagement.maneuver_start", 1.5);
  ec.maneuver.peak_accel = cfg.get_double("engagement.maneuver_peak_g", 9.0) * 9.81;
  ec.maneuver.period = cfg.get_double("engagement.maneuver_period", 2.0);
  ec.seed = cfg.get_u64("engagement.seed", 1);

  const EngagementResult res = run_engagement(ec);

  CsvWriter traj(out / "trajectories.csv",
                 "t_s,missile_x_m,missile_z_m,target_x_m,target_z_m,range_m,"
                 "theta_rad,theta_dot_rad_s");
  for (std::size_t i = 0; i < res.time.size(); ++i)
    traj.row({res.time[i], res.missile_pos[i].x(), res.missile_pos[i].y(),
              res.target_pos[i].x(), res.target_pos[i].y(), res.range[i],
              res.theta[i], res.theta_dot[i]});

  CsvWriter accel(out / "accel.csv", "t_s,a_missile_m_s2,a_target_m_s2");
  for (std::size_t i = 0; i < res.time.size(); ++i)
    accel.row({res.time[i], res.accel_missile[i], res.accel_target[i]});

  const BasisTriple bases = missile_bases();
  std::string wa_header = "cycle,t_start_s";
  for (int i = 1; i <= bases.actor.size(); ++i)
    wa_header += ",wa" + std::to_string(i);
  CsvWriter wa_csv(out / "actor_weights.csv", wa_header);
  CsvWriter iters(out / "iterations.csv", "cycle,t_start_s,iterations,converged");
  for (const auto& c : res.cycles) {
    std::vector<double> row{static_cast<double>(c.index), c.t_start};
    for (Eigen::Index i = 0; i < c.actor_weights.size(); ++i)
      row.push_back(c.actor_weights[i]);
    wa_csv.row(row);
    iters.row({static_cast<double>(c.index), c.t_start,
               static_cast<double>(c.iterations), c.converged ? 1.0 : 0.0});
  }

  CsvWriter summary(out / "summary.csv",
                    "miss_distance_m,intercept_time_s,intercept,cycles,max_cycle_iterations");
  int max_iter = 0;
  for (const auto& c : res.cycles) max_iter = std::max(max_iter, c.iterations);
  summary.row({res.miss_distance, res.intercept_time, res.intercept ? 1.0 : 0.0,
               static_cast<double>(res.cycles.size()),
               static_cast<double>(max_iter)});

  Config manifest;
  manifest.set_string("run.command", "missile");
  manifest.set_string("run.version", kToolVersion);
  manifest.set_vector("engagement.missile_pos", ec.missile_pos);
  manifest.set_double("engagement.missile_fpa_deg", ec.missile_fpa * 180.0 / M_PI);
  manifest.set_double("engagement.missile_speed", ec.missile_speed);
  manifest.set_vector("engagement.target_pos", ec.target_pos);
  manifest.set_double("engagement.target_fpa_deg", ec.target_fpa * 180.0 / M_PI);
  manifest.set_double("engagement.target_speed", ec.target_speed);
  manifest.set_double("engagement.q1", ec.q1);
  manifest.set_double("engagement.q2", ec.q2);
  manifest.set_double("engagement.r", ec.r_weight);
  manifest.set_double("engagement.gamma", ec.gamma);
  manifest.set_double("engagement.dt", ec.dt);
  manifest.set_int("engagement.windows_per_cycle", ec.windows_per_cycle);
  manifest.set_int("engagement.substeps", ec.substeps);
  manifest.set_double("engagement.alpha", ec.alpha);
  manifest.set_double("engagement.tolerance", ec.tolerance);
  manifest.set_int("engagement.iteration_cap", ec.iteration_cap);
  manifest.set_double("engagement.exploration_amplitude", ec.exploration_amplitude);
  manifest.set_int("engagement.exploration_cycles", ec.exploration_cycles);
  manifest.set_double("engagement.accel_limit_g", ec.accel_limit / 9.81);
  manifest.set_double("engagement.max_time", ec.max_time);
  manifest.set_bool("engagement.maneuver_enabled", ec.maneuver.enabled);
  manifest.set_double("engagement.maneuver_start", ec.maneuver.start_time);
  manifest.set_double("engagement.maneuver_peak_g", ec.maneuver.peak_accel / 9.81);
  manifest.set_double("engagement.maneuver_period", ec.maneuver.period);
  manifest.set_u64("engagement.seed", ec.seed);
  manifest.set_string("bases.critic", basis_line(bases.critic));
  manifest.set_string("bases.actor", basis_line(bases.actor));
  manifest.set_string("bases.disturbance", basis_line(bases.disturbance));
  manifest.set_double("result.miss_distance_m", res.miss_distance);
  manifest.set_double("result.intercept_time_s", res.intercept_time);
  manifest.set_bool("result.intercept", res.intercept);
  manifest.set_int("result.cycles", static_cast<long long>(res.cycles.size()));
  manifest.set_int("result.max_cycle_iterations", max_iter);
  write_manifest(out, manifest);

  std::cout << "missile: miss distance " << fmt(res.miss_distance)
            << " m at t = " << fmt(res.intercept_time) << " s ("
            << res.cycles.size() << " cycles, max " << max_iter
            << " iterations)\n";
  return kExitOk;
}

int cmd_oracle(const Config& cfg, const std::string& out_dir) {
  const auto out = prepare_out_dir(out_dir);

  Eigen::MatrixXd A(2, 2), B(2, 1), D(2, 1);
  A << 0, 1, -1, -1;
  B << 0, 1;
  D << 0, 1;
  Eigen::MatrixXd Qm = Eigen::MatrixXd::Identity(2, 2);
  A = cfg.get_matrix("game.A", A);
  B = cfg.get_matrix("game.B", B);
  D = cfg.get_matrix("game.D", D);
  Qm = cfg.get_matrix("game.Qm", Qm);
  const double gamma = cfg.get_double("game.gamma", 2.0);
  const Eigen::VectorXd r_diag =
      cfg.get_vector("game.r_diag", Eigen::VectorXd::Constant(B.cols(), 1.0));
  const int n = static_cast<int>(A.rows());

  GareSolution oracle;
  try {
    oracle = solve_gare(A, B, D, Qm, Eigen::MatrixXd(r_diag.asDiagonal()), gamma);
  } catch (const GammaTooSmallError& e) {
    std::cerr << "oracle: " << e.what() << '\n';
    return kExitInfeasible;
  }

  std::cout << "oracle P:\n" << oracle.P << "\ncontrol gain K:\n" << oracle.K
            << "\ndisturbance gain L:\n" << oracle.L << "\n";

  CsvWriter pcsv(out / "oracle.csv", "i,j,P,K_row,L_row");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pcsv.row({static_cast<double>(i), static_cast<double>(j), oracle.P(i, j),
                i < oracle.K.rows() && j < oracle.K.cols() ? oracle.K(i, j) : 0.0,
                i < oracle.L.rows() && j < oracle.L.cols() ? oracle.L(i, j) : 0.0});

  // Learn the same instance from data and compare.
  GameSpec spec{make_linear_game(A, B, D, Qm), gamma, r_diag};
  const BasisTriple bases{quadratic_basis(n), linear_basis(n), linear_basis(n)};
  Eigen::VectorXd x0 = cfg.get_vector(
      "learner.x0", Eigen::VectorXd::Constant(n, 0.5));
  const double dt = cfg.get_double("learner.dt", 0.05);
  const int substeps = cfg.get_int("learner.substeps", 10);
  const int windows = cfg.get_int("learner.windows", 80);
  const double behavior_amp = cfg.get_double("learner.behavior_amplitude", 1.0);
  const double alpha = cfg.get_double("learner.alpha", 0.3);
  const double tolerance = cfg.get_double("learner.tolerance", 1e-9);
  const int cap = cfg.get_int("learner.max_iterations", 200);
  const std::uint64_t seed = cfg.get_u64("learner.seed", 1);

  const DataSet data =
      collect(spec, x0, windows, dt, substeps,
              uniform_behavior(static_cast<int>(B.cols()),
                               static_cast<int>(D.cols()), behavior_amp,
                               behavior_amp),
              seed);
  const OffPolicyResult sol = offpolicy_solve(
      spec, data, bases,
      StackedWeights::zero(bases, static_cast<int>(B.cols()),
                           static_cast<int>(D.cols())),
      alpha, tolerance, cap);

  const Eigen::MatrixXd P_learned =
      quadratic_weights_to_matrix(bases.critic, sol.weights.critic);
  double max_delta = 0.0;
  CsvWriter dcsv(out / "deltas.csv", "i,j,P_oracle,P_learned,abs_delta");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = std::abs(P_learned(i, j) - oracle.P(i, j));
      max_delta = std::max(max_delta, d);
      dcsv.row({static_cast<double>(i), static_cast<double>(j), oracle.P(i, j),
                P_learned(i, j), d});
    }

  Config manifest;
  manifest.set_string("run.command", "oracle");
  manifest.set_string("run.version", kToolVersion);
  manifest.set_matrix("game.A", A);
  manifest.set_matrix("game.B", B);
  manifest.set_matrix("game.D", D);
  manifest.set_matrix("game.Qm", Qm);
  manifest.set_double("game.gamma", gamma);
  manifest.set_vector("game.r_diag", r_diag);
  manifest.set_vector("learner.x0", x0);
  manifest.set_double("learner.dt", dt);
  manifest.set_int("learner.substeps", substeps);
  manifest.set_int("learner.windows", windows);
  manifest.set_double("learner.behavior_amplitude", behavior_amp);
  manifest.set_double("learner.alpha", alpha);
  manifest.set_double("learner.tolerance", tolerance);
  manifest.set_int("learner.max_iterations", cap);
  manifest.set_u64("learner.seed", seed);
  manifest.set_matrix("result.P_oracle", oracle.P);
  manifest.set_matrix("result.P_learned", P_learned);
  manifest.set_double("result.max_abs_delta", max_delta);
  manifest.set_bool("result.converged", sol.converged);
  manifest.set_int("result.iterations", sol.iterations);
  write_manifest(out, manifest);

  std::cout << "learned P (off-policy, alpha = " << alpha << "):\n"
            << P_learned << "\nmax |delta| = " << fmt(max_delta) << "\n";
  return sol.converged ? kExitOk : kExitNotConverged;
}

namespace {

// Shared system construction for collect/solve.
GameSpec spec_from_cfg(const Config& cfg, const std::string& section) {
  const std::string system = cfg.get_string(section + ".system", "example_a");
  const double gamma = cfg.get_double("game.gamma", 2.0);
  if (system == "example_a") {
    return GameSpec{make_example_a(), gamma,
                    cfg.get_vector("game.r_diag", Eigen::VectorXd::Constant(1, 1.0))};
  }
  if (system == "linear") {
    const Eigen::MatrixXd A = cfg.get_matrix("game.A", Eigen::MatrixXd());
    const Eigen::MatrixXd B = cfg.get_matrix("game.B", Eigen::MatrixXd());
    const Eigen::MatrixXd D = cfg.get_matrix("game.D", Eigen::MatrixXd());
    const Eigen::MatrixXd Qm = cfg.get_matrix("game.Qm", Eigen::MatrixXd());
    if (A.size() == 0 || B.size() == 0 || D.size() == 0 || Qm.size() == 0)
      throw ConfigError("linear system requires game.A, game.B, game.D, game.Qm");
    return GameSpec{make_linear_game(A, B, D, Qm), gamma,
                    cfg.get_vector("game.r_diag",
                                   Eigen::VectorXd::Constant(B.cols(), 1.0))};
  }
  if (system == "quadratic_cost") {
    // Cost-only carrier for datasets collected elsewhere (model-free solve).
    const Eigen::MatrixXd Qm = cfg.get_matrix("game.Qm", Eigen::MatrixXd());
    if (Qm.size() == 0) throw ConfigError("quadratic_cost requires game.Qm");
    const int m = cfg.get_int("game.control_dim", 1);
    const int q = cfg.get_int("game.disturbance_dim", 1);
    return GameSpec{
        make_cost_only(static_cast<int>(Qm.rows()), m, q,
                       [Qm](const Eigen::VectorXd& x) {
                         return (x.transpose() * Qm * x).value();
                       }),
        gamma, cfg.get_vector("game.r_diag", Eigen::VectorXd::Constant(m, 1.0))};
  }
  throw ConfigError("unknown system '" + system + "'");
}

}  // namespace

int cmd_collect(const Config& cfg, const std::string& out_dir) {
  const auto out = prepare_out_dir(out_dir);
  const GameSpec spec = spec_from_cfg(cfg, "collect");

  Eigen::VectorXd x0 = cfg.get_vector(
      "collect.x0", Eigen::VectorXd::Constant(spec.dyn.state_dim, 0.4));
  const int windows = cfg.get_int("collect.windows", 50);
  const double dt = cfg.get_double("collect.dt", 0.05);
  const int substeps = cfg.get_int("collect.substeps", 10);
  const double amp = cfg.get_double("collect.behavior_amplitude", 1.0);
  const std::uint64_t seed = cfg.get_u64("collect.seed", 1);

  const DataSet data =
      collect(spec, x0, windows, dt, substeps,
              uniform_behavior(spec.dyn.control_dim, spec.dyn.disturbance_dim,
                               amp, amp),
              seed);
  save_dataset_file(data, (out / "dataset.txt").string());

  Config manifest;
  manifest.set_string("run.command", "collect");
  manifest.set_string("run.version", kToolVersion);
  manifest.set_string("collect.system", cfg.get_string("collect.system", "example_a"));
  manifest.set_double("game.gamma", spec.gamma);
  manifest.set_vector("game.r_diag", spec.r_diag);
  manifest.set_vector("collect.x0", x0);
  manifest.set_int("collect.windows", windows);
  manifest.set_double("collect.dt", dt);
  manifest.set_int("collect.substeps", substeps);
  manifest.set_double("collect.behavior_amplitude", amp);
  manifest.set_u64("collect.seed", seed);
  write_manifest(out, manifest);

  std::cout << "collect: wrote " << windows << " windows to "
            << (out / "dataset.txt").string() << "\n";
  return kExitOk;
}

int cmd_solve(const Config& cfg, const std::string& out_dir) {
  const auto out = prepare_out_dir(out_dir);
  const std::string dataset_path = cfg.get_string("solve.dataset", "");
  if (dataset_path.empty()) throw ConfigError("solve requires solve.dataset = <path>");
  const DataSet data = load_dataset_file(dataset_path);
  const GameSpec spec = spec_from_cfg(cfg, "solve");

  const BasisTriple defaults = example_a_bases();
  const int n = spec.dyn.state_dim;
  const BasisTriple bases{
      basis_from_cfg(cfg, "bases.critic", defaults.critic, n),
      basis_from_cfg(cfg, "bases.actor", defaults.actor, n),
      basis_from_cfg(cfg, "bases.disturbance", defaults.disturbance, n)};

  const double alpha = cfg.get_double("solve.alpha", 0.3);
  const double tolerance = cfg.get_double("solve.tolerance", 1e-7);
  const int cap = cfg.get_int("solve.max_iterations", 100);

  const OffPolicyResult sol = offpolicy_solve(
      spec, data, bases,
      StackedWeights::zero(bases, spec.dyn.control_dim, spec.dyn.disturbance_dim),
      alpha, tolerance, cap);

  write_weight_history(out / "weights_per_iter.csv", sol.history,
                       stacked_names(bases, spec.dyn.control_dim,
                                     spec.dyn.disturbance_dim));

  Config manifest;
  manifest.set_string("run.command", "solve");
  manifest.set_string("run.version", kToolVersion);
  manifest.set_string("solve.dataset", dataset_path);
  manifest.set_string("solve.system", cfg.get_string("solve.system", "example_a"));
  manifest.set_double("game.gamma", spec.gamma);
  manifest.set_vector("game.r_diag", spec.r_diag);
  manifest.set_double("solve.alpha", alpha);
  manifest.set_double("solve.tolerance", tolerance);
  manifest.set_int("solve.max_iterations", cap);
  manifest.set_string("bases.critic", basis_line(bases.critic));
  manifest.set_string("bases.actor", basis_line(bases.actor));
  manifest.set_string("bases.disturbance", basis_line(bases.disturbance));
  manifest.set_bool("result.converged", sol.converged);
  manifest.set_int("result.iterations", sol.iterations);
  manifest.set_vector("result.critic_weights", sol.weights.critic);
  write_manifest(out, manifest);

  std::cout << "solve: " << (sol.converged ? "converged" : "NOT converged")
            << " in " << sol.iterations << " iterations\n";
  return sol.converged ? kExitOk : kExitNotConverged;
}

}  // namespace alphapi
