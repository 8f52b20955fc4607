#pragma once

#include <Eigen/Dense>

namespace alphapi {

/// Ground-truth solution of the linear-quadratic zero-sum game
///   A'P + PA + Qm - P B R^-1 B' P + (1/gamma^2) P D D' P = 0
/// with the associated feedback gains.
struct GareSolution {
  Eigen::MatrixXd P;  // symmetric PSD
  Eigen::MatrixXd K;  // control gain, u = -K x, K = R^-1 B' P
  Eigen::MatrixXd L;  // disturbance gain, w = L x, L = (1/gamma^2) D' P

  /// A'P + PA + Qm - P B R^-1 B' P + (1/gamma^2) P D D' P.
  Eigen::MatrixXd residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const Eigen::MatrixXd& D, const Eigen::MatrixXd& Qm,
                           const Eigen::MatrixXd& R, double gamma) const;
};

/// Solves the Sylvester-structure equation A'X + XA + C = 0 by Kronecker
/// vectorization; sizes here are tiny. Throws StepFailureError when the
/// Lyapunov operator is singular.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C);

/// Iterative-Lyapunov game Riccati solve: policy/disturbance gains updated
/// simultaneously each sweep, seeded from the disturbance-free Riccati
/// solution. Requires (A, B) stabilizable and gamma above the instance's
/// feasibility threshold; divergence or a singular Lyapunov step surfaces as
/// GammaTooSmallError.
GareSolution solve_gare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& D, const Eigen::MatrixXd& Qm,
                        const Eigen::MatrixXd& R, double gamma);

}  // namespace alphapi
