#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "alphapi/basis.hpp"
#include "alphapi/dynamics.hpp"
#include "alphapi/hji.hpp"
#include "alphapi/rng.hpp"

namespace alphapi {

/// System signature recorded at collection time; solves against a different
/// signature are rejected as stale.
struct DataFingerprint {
  int state_dim = 0;
  int control_dim = 0;
  int disturbance_dim = 0;
  int window_count = 0;
  double dt = 0.0;
  int substeps = 0;
  std::uint64_t seed = 0;
};

/// Immutable batch of sampling windows collected once under behavior inputs
/// and reused by every iteration.
struct DataSet {
  std::vector<SampleWindow> windows;
  DataFingerprint fingerprint;
};

/// Behavior inputs for one window: (u, w) held over [t, t+dt], chosen from
/// the window's start time and state. The RNG is the collection stream, so
/// identical seeds give identical data.
using BehaviorFn = std::function<std::pair<Eigen::VectorXd, Eigen::VectorXd>(
    double t, const Eigen::VectorXd& x, Rng& rng)>;

/// Uniformly distributed inputs in [-amplitude, amplitude] per channel.
BehaviorFn uniform_behavior(int control_dim, int disturbance_dim,
                            double control_amplitude = 1.0,
                            double disturbance_amplitude = 1.0);

/// Behavior that plays a fixed policy pair, optionally with added uniform
/// exploration noise on the control channel.
BehaviorFn policy_behavior(PolicyPair pair, double control_noise = 0.0);

/// Collects one continuous trajectory from x0 chopped into `window_count`
/// windows of length dt. Fully reproducible from the seed. A trajectory
/// blow-up rejects the whole set.
DataSet collect(const GameSpec& spec, const Eigen::VectorXd& x0,
                int window_count, double dt, int substeps,
                const BehaviorFn& behavior, std::uint64_t seed);

/// Stacked unknowns of one evaluation solve: critic weights followed by one
/// actor column per control channel and one disturbance column per
/// disturbance channel.
struct StackedWeights {
  Eigen::VectorXd critic;       // L1
  Eigen::MatrixXd actor;        // L2 x m
  Eigen::MatrixXd disturbance;  // L3 x q

  Eigen::VectorXd stacked() const;
  static StackedWeights from_stacked(const Eigen::VectorXd& v,
                                     const BasisTriple& bases, int control_dim,
                                     int disturbance_dim);
  static StackedWeights zero(const BasisTriple& bases, int control_dim,
                             int disturbance_dim);

  /// u_i(x) = actor' phi(x); w_i(x) = disturbance' varphi(x).
  Eigen::VectorXd control(const BasisTriple& bases, const Eigen::VectorXd& x) const;
  Eigen::VectorXd disturb(const BasisTriple& bases, const Eigen::VectorXd& x) const;
};

/// Builds the regression of one damped evaluation step from stored data:
/// feature columns
///   [ rho(x+) - rho(x);  2 r_j Int phi mu_j dt;  -2 gamma^2 Int varphi nu_k dt ]
/// and targets lambda with the (1-alpha)-weighted correction terms, where
/// mu = u - u_i(x) and nu = w - w_i(x) are re-evaluated along the stored
/// sub-step states under the current iterate's policies.
/// Returns (Pi, Lambda) with Pi sized (L1 + m L2 + q L3) x M.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> assemble_features(
    const GameSpec& spec, const DataSet& data, const BasisTriple& bases,
    const StackedWeights& W_i, double alpha);

/// One least-squares solve of the stacked regression.
StackedWeights offpolicy_iterate(const GameSpec& spec, const DataSet& data,
                                 const BasisTriple& bases,
                                 const StackedWeights& W_i, double alpha);

struct OffPolicyResult {
  StackedWeights weights;
  bool converged = false;
  int iterations = 0;
  std::vector<Eigen::VectorXd> history;  // stacked iterates including W_0
  std::vector<double> change_norms;
};

/// Reuses the same DataSet every iteration until the stacked-weight change
/// drops below tolerance or the cap is reached (flagged, not thrown).
OffPolicyResult offpolicy_solve(const GameSpec& spec, const DataSet& data,
                                const BasisTriple& bases,
                                const StackedWeights& W_0, double alpha,
                                double tolerance, int max_iterations);

/// Line-oriented text serialization; numeric fields round-trip bit-exactly.
void save_dataset(const DataSet& data, std::ostream& os);
DataSet load_dataset(std::istream& is);
void save_dataset_file(const DataSet& data, const std::string& path);
DataSet load_dataset_file(const std::string& path);

}  // namespace alphapi
