#include "alphapi/offpolicy.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "alphapi/errors.hpp"
#include "alphapi/lstsq.hpp"

namespace alphapi {

BehaviorFn uniform_behavior(int control_dim, int disturbance_dim,
                            double control_amplitude,
                            double disturbance_amplitude) {
  return [=](double, const Eigen::VectorXd&, Rng& rng) {
    Eigen::VectorXd u(control_dim), w(disturbance_dim);
    for (int i = 0; i < control_dim; ++i)
      u[i] = control_amplitude * uniform_symmetric(rng);
    for (int i = 0; i < disturbance_dim; ++i)
      w[i] = disturbance_amplitude * uniform_symmetric(rng);
    return std::make_pair(u, w);
  };
}

BehaviorFn policy_behavior(PolicyPair pair, double control_noise) {
  return [pair = std::move(pair), control_noise](
             double, const Eigen::VectorXd& x, Rng& rng) {
    Eigen::VectorXd u = pair.control(x);
    if (control_noise > 0.0)
      for (Eigen::Index i = 0; i < u.size(); ++i)
        u[i] += control_noise * uniform_symmetric(rng);
    return std::make_pair(u, pair.disturbance(x));
  };
}

DataSet collect(const GameSpec& spec, const Eigen::VectorXd& x0,
                int window_count, double dt, int substeps,
                const BehaviorFn& behavior, std::uint64_t seed) {
  validate(spec);
  if (window_count < 1)
    throw std::invalid_argument("collect: window_count must be >= 1");

  DataSet data;
  data.fingerprint = {spec.dyn.state_dim, spec.dyn.control_dim,
                      spec.dyn.disturbance_dim, window_count, dt, substeps, seed};
  data.windows.reserve(window_count);

  Rng rng(seed);
  Eigen::VectorXd x = x0;
  for (int k = 0; k < window_count; ++k) {
    const double t = k * dt;
    const auto [u, w] = behavior(t, x, rng);
    SampleWindow win = integrate_window(spec.dyn, x, u, w, dt, substeps, t);
    x = win.final_state();
    data.windows.push_back(std::move(win));
  }
  return data;
}

Eigen::VectorXd StackedWeights::stacked() const {
  const Eigen::Index m = actor.cols(), q = disturbance.cols();
  const Eigen::Index L2 = actor.rows(), L3 = disturbance.rows();
  Eigen::VectorXd v(critic.size() + m * L2 + q * L3);
  v.head(critic.size()) = critic;
  Eigen::Index at = critic.size();
  for (Eigen::Index j = 0; j < m; ++j, at += L2) v.segment(at, L2) = actor.col(j);
  for (Eigen::Index k = 0; k < q; ++k, at += L3) v.segment(at, L3) = disturbance.col(k);
  return v;
}

StackedWeights StackedWeights::from_stacked(const Eigen::VectorXd& v,
                                            const BasisTriple& bases,
                                            int control_dim,
                                            int disturbance_dim) {
  const int L1 = bases.critic.size(), L2 = bases.actor.size(),
            L3 = bases.disturbance.size();
  if (v.size() != L1 + control_dim * L2 + disturbance_dim * L3)
    throw std::invalid_argument("from_stacked: size mismatch");
  StackedWeights w;
  w.critic = v.head(L1);
  w.actor.resize(L2, control_dim);
  w.disturbance.resize(L3, disturbance_dim);
  Eigen::Index at = L1;
  for (int j = 0; j < control_dim; ++j, at += L2) w.actor.col(j) = v.segment(at, L2);
  for (int k = 0; k < disturbance_dim; ++k, at += L3)
    w.disturbance.col(k) = v.segment(at, L3);
  return w;
}

StackedWeights StackedWeights::zero(const BasisTriple& bases, int control_dim,
                                    int disturbance_dim) {
  StackedWeights w;
  w.critic = Eigen::VectorXd::Zero(bases.critic.size());
  w.actor = Eigen::MatrixXd::Zero(bases.actor.size(), control_dim);
  w.disturbance = Eigen::MatrixXd::Zero(bases.disturbance.size(), disturbance_dim);
  return w;
}

Eigen::VectorXd StackedWeights::control(const BasisTriple& bases,
                                        const Eigen::VectorXd& x) const {
  return actor.transpose() * bases.actor.eval(x);
}

Eigen::VectorXd StackedWeights::disturb(const BasisTriple& bases,
                                        const Eigen::VectorXd& x) const {
  return disturbance.transpose() * bases.disturbance.eval(x);
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> assemble_features(
    const GameSpec& spec, const DataSet& data, const BasisTriple& bases,
    const StackedWeights& W_i, double alpha) {
  validate(spec);
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("assemble_features: alpha must be in (0, 1]");
  const auto& fp = data.fingerprint;
  if (fp.state_dim != spec.dyn.state_dim || fp.control_dim != spec.dyn.control_dim ||
      fp.disturbance_dim != spec.dyn.disturbance_dim)
    throw StaleDataError("assemble_features: data collected for a different system");
  const int m = spec.dyn.control_dim, q = spec.dyn.disturbance_dim;
  const int L1 = bases.critic.size(), L2 = bases.actor.size(),
            L3 = bases.disturbance.size();
  if (W_i.critic.size() != L1 || W_i.actor.rows() != L2 || W_i.actor.cols() != m ||
      W_i.disturbance.rows() != L3 || W_i.disturbance.cols() != q)
    throw std::invalid_argument("assemble_features: weight shapes do not match bases");

  const int M = static_cast<int>(data.windows.size());
  const int K = L1 + m * L2 + q * L3;
  const double g2 = spec.gamma * spec.gamma;

  Eigen::MatrixXd Pi(K, M);
  Eigen::VectorXd Lambda(M);

  for (int c = 0; c < M; ++c) {
    const SampleWindow& win = data.windows[c];
    const auto qw = quadrature_weights(win.substeps(), win.substep_size());

    const Eigen::VectorXd rho_diff =
        bases.critic.eval(win.final_state()) - bases.critic.eval(win.initial_state());

    // Per-channel integrals Int phi mu_j dt and Int varphi nu_k dt, plus the
    // damped reward integral, accumulated in one pass over the sub-steps.
    Eigen::MatrixXd int_phi_mu = Eigen::MatrixXd::Zero(L2, m);
    Eigen::MatrixXd int_vrp_nu = Eigen::MatrixXd::Zero(L3, q);
    double reward = 0.0;
    for (int s = 0; s <= win.substeps(); ++s) {
      if (qw[s] == 0.0) continue;
      const Eigen::VectorXd& xs = win.substep_states[s];
      const Eigen::VectorXd phi = bases.actor.eval(xs);
      const Eigen::VectorXd vrp = bases.disturbance.eval(xs);
      const Eigen::VectorXd u_i = W_i.actor.transpose() * phi;
      const Eigen::VectorXd w_i = W_i.disturbance.transpose() * vrp;
      const Eigen::VectorXd mu = win.behavior_control - u_i;
      const Eigen::VectorXd nu = win.behavior_disturbance - w_i;
      int_phi_mu += qw[s] * phi * mu.transpose();
      int_vrp_nu += qw[s] * vrp * nu.transpose();
      reward += qw[s] * (spec.dyn.state_cost(xs) +
                         u_i.dot(spec.r_diag.asDiagonal() * u_i) -
                         g2 * w_i.squaredNorm());
    }

    Eigen::VectorXd col(K);
    col.head(L1) = rho_diff;
    Eigen::Index at = L1;
    for (int j = 0; j < m; ++j, at += L2)
      col.segment(at, L2) = 2.0 * spec.r_diag[j] * int_phi_mu.col(j);
    for (int k = 0; k < q; ++k, at += L3)
      col.segment(at, L3) = -2.0 * g2 * int_vrp_nu.col(k);
    Pi.col(c) = col;

    double lam = -alpha * reward + (1.0 - alpha) * W_i.critic.dot(rho_diff);
    for (int j = 0; j < m; ++j)
      lam += 2.0 * (1.0 - alpha) * spec.r_diag[j] *
             W_i.actor.col(j).dot(int_phi_mu.col(j));
    for (int k = 0; k < q; ++k)
      lam -= 2.0 * (1.0 - alpha) * g2 * W_i.disturbance.col(k).dot(int_vrp_nu.col(k));
    Lambda(c) = lam;
  }
  return {Pi, Lambda};
}

StackedWeights offpolicy_iterate(const GameSpec& spec, const DataSet& data,
                                 const BasisTriple& bases,
                                 const StackedWeights& W_i, double alpha) {
  const int m = spec.dyn.control_dim, q = spec.dyn.disturbance_dim;
  const int L1 = bases.critic.size(), L2 = bases.actor.size(),
            L3 = bases.disturbance.size();
  const int K = L1 + m * L2 + q * L3;
  if (static_cast<int>(data.windows.size()) <= K)
    throw std::invalid_argument(
        "offpolicy_iterate: need strictly more windows than stacked unknowns");
  auto [Pi, Lambda] = assemble_features(spec, data, bases, W_i, alpha);

  // The critic, actor and disturbance blocks carry different physical units,
  // so their feature magnitudes can sit orders apart. Equilibrate per block
  // before the solve; this leaves the full-rank solution unchanged but makes
  // the rank decision meaningful across blocks.
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(K);
  const int M = static_cast<int>(data.windows.size());
  auto block_scale = [&](int at, int len) {
    const double rms = Pi.middleRows(at, len).norm() /
                       std::sqrt(static_cast<double>(len) * M);
    const double s = rms > 0.0 ? 1.0 / rms : 1.0;
    scale.segment(at, len).setConstant(s);
  };
  block_scale(0, L1);
  for (int j = 0; j < m; ++j) block_scale(L1 + j * L2, L2);
  for (int k = 0; k < q; ++k) block_scale(L1 + m * L2 + k * L3, L3);
  Pi = scale.asDiagonal() * Pi;

  const Eigen::VectorXd z = solve_bls(Pi.transpose(), Lambda,
                                      "Collect richer behavior data.");
  return StackedWeights::from_stacked(scale.asDiagonal() * z, bases, m, q);
}

OffPolicyResult offpolicy_solve(const GameSpec& spec, const DataSet& data,
                                const BasisTriple& bases,
                                const StackedWeights& W_0, double alpha,
                                double tolerance, int max_iterations) {
  OffPolicyResult res;
  res.weights = W_0;
  res.history.push_back(W_0.stacked());
  StackedWeights W = W_0;
  for (int i = 0; i < max_iterations; ++i) {
    const StackedWeights W_next = offpolicy_iterate(spec, data, bases, W, alpha);
    const double change = (W_next.stacked() - W.stacked()).norm();
    W = W_next;
    res.history.push_back(W.stacked());
    res.change_norms.push_back(change);
    res.iterations = i + 1;
    if (change <= tolerance) {
      res.converged = true;
      break;
    }
  }
  res.weights = W;
  return res;
}

namespace {

// 17 significant digits round-trip IEEE doubles exactly.
void put(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void save_dataset(const DataSet& data, std::ostream& os) {
  const auto& fp = data.fingerprint;
  os << "dataset v1\n";
  os << fp.state_dim << ' ' << fp.control_dim << ' ' << fp.disturbance_dim << ' '
     << fp.window_count << ' ';
  put(os, fp.dt);
  os << ' ' << fp.substeps << ' ' << fp.seed << '\n';
  for (const auto& win : data.windows) {
    put(os, win.t_start);
    os << '\n';
    for (Eigen::Index i = 0; i < win.behavior_control.size(); ++i) {
      if (i) os << ' ';
      put(os, win.behavior_control[i]);
    }
    os << '\n';
    for (Eigen::Index i = 0; i < win.behavior_disturbance.size(); ++i) {
      if (i) os << ' ';
      put(os, win.behavior_disturbance[i]);
    }
    os << '\n';
    for (const auto& x : win.substep_states) {
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (i) os << ' ';
        put(os, x[i]);
      }
      os << '\n';
    }
  }
}

DataSet load_dataset(std::istream& is) {
  std::string magic, version;
  is >> magic >> version;
  if (magic != "dataset" || version != "v1")
    throw ConfigError("dataset: unrecognized header");
  DataSet data;
  auto& fp = data.fingerprint;
  if (!(is >> fp.state_dim >> fp.control_dim >> fp.disturbance_dim >>
        fp.window_count >> fp.dt >> fp.substeps >> fp.seed))
    throw ConfigError("dataset: malformed fingerprint line");
  if (fp.state_dim < 1 || fp.control_dim < 0 || fp.disturbance_dim < 0 ||
      fp.window_count < 1 || fp.substeps < 2)
    throw ConfigError("dataset: implausible fingerprint");
  data.windows.reserve(fp.window_count);
  for (int k = 0; k < fp.window_count; ++k) {
    SampleWindow win;
    win.dt = fp.dt;
    if (!(is >> win.t_start)) throw ConfigError("dataset: truncated window header");
    win.behavior_control.resize(fp.control_dim);
    for (int i = 0; i < fp.control_dim; ++i)
      if (!(is >> win.behavior_control[i]))
        throw ConfigError("dataset: truncated behavior control");
    win.behavior_disturbance.resize(fp.disturbance_dim);
    for (int i = 0; i < fp.disturbance_dim; ++i)
      if (!(is >> win.behavior_disturbance[i]))
        throw ConfigError("dataset: truncated behavior disturbance");
    win.substep_states.reserve(fp.substeps + 1);
    for (int s = 0; s <= fp.substeps; ++s) {
      Eigen::VectorXd x(fp.state_dim);
      for (int i = 0; i < fp.state_dim; ++i)
        if (!(is >> x[i])) throw ConfigError("dataset: truncated sub-step state");
      win.substep_states.push_back(std::move(x));
    }
    data.windows.push_back(std::move(win));
  }
  return data;
}

void save_dataset_file(const DataSet& data, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("dataset: cannot open " + path + " for writing");
  save_dataset(data, os);
}

DataSet load_dataset_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("dataset: cannot open " + path);
  return load_dataset(is);
}

}  // namespace alphapi
