#pragma once

#include <Eigen/Dense>
#include <functional>

#include "alphapi/basis.hpp"
#include "alphapi/dynamics.hpp"

namespace alphapi {

/// Game instance: dynamics plus the attenuation level gamma and the diagonal
/// of the control weight R.
struct GameSpec {
  AffineDynamics dyn;
  double gamma = 1.0;
  Eigen::VectorXd r_diag;  // m positive entries

  Eigen::MatrixXd R() const { return r_diag.asDiagonal(); }
  Eigen::MatrixXd R_inv() const {
    return r_diag.cwiseInverse().asDiagonal().toDenseMatrix();
  }
};

/// Throws std::invalid_argument if gamma or any R entry is not positive or
/// r_diag does not match the control dimension.
void validate(const GameSpec& spec);

/// Value-function approximant V(x) = W' rho(x). Vanishes at the origin
/// because every basis term has degree >= 1.
struct CriticFunction {
  BasisSet basis;
  Eigen::VectorXd weights;

  double value(const Eigen::VectorXd& x) const {
    return weights.dot(basis.eval(x));
  }
  /// grad V = (grad rho)' W, an n-vector.
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    return basis.eval_gradient(x).transpose() * weights;
  }
};

/// Saddle-point policy pair derived from a value function.
struct PolicyPair {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> control;      // u(x)
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> disturbance;  // w(x)
};

/// Greedy policies of V:
///   u(x) = -1/2 R^-1 g(x)' grad V,   w(x) = 1/(2 gamma^2) k(x)' grad V.
PolicyPair extract_policies(const GameSpec& spec, const CriticFunction& V);

/// H(x, u, w) = Q + u'Ru - gamma^2 w'w + grad V' (f + g u + k w).
double hamiltonian(const GameSpec& spec, const CriticFunction& V,
                   const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& w);

/// Residual of the nonlinear fixed-point map:
///   Q + grad V' f - 1/4 grad V' g R^-1 g' grad V
///     + 1/(4 gamma^2) grad V' k k' grad V.
/// Zero everywhere iff V solves the design equation.
double g_residual(const GameSpec& spec, const CriticFunction& V,
                  const Eigen::VectorXd& x);

/// Directional (Frechet) derivative of the residual map at V in direction Z.
/// Computed from the bilinear expansion and cross-checked internally against
/// the closed-loop form grad Z' (f + g u_V + k w_V); the two agree to
/// rounding or a std::logic_error is thrown.
double frechet_apply(const GameSpec& spec, const CriticFunction& V,
                     const CriticFunction& Z, const Eigen::VectorXd& x);

/// Pointwise residual of the damped policy-evaluation equation linking
/// V_next to V_cur with step alpha in (0, 1]:
///   grad V_next' (f + g u_i + k w_i)
///     - (1-alpha) grad V_cur' (f + g u_i + k w_i)
///     + alpha (Q + u_i'R u_i - gamma^2 w_i'w_i),
/// with (u_i, w_i) the greedy policies of V_cur. With alpha = 1 this is the
/// plain policy-evaluation residual.
double generalized_bellman_residual(const GameSpec& spec,
                                    const CriticFunction& V_next,
                                    const CriticFunction& V_cur, double alpha,
                                    const Eigen::VectorXd& x);

}  // namespace alphapi
