#include "alphapi/lq_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "alphapi/errors.hpp"

namespace alphapi {

namespace {

double max_real_eigenvalue(const Eigen::MatrixXd& M) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
  return es.eigenvalues().real().maxCoeff();
}

// Stabilizing gain for (A, B) via forward integration of the Riccati flow
// Pdot = A'P + PA + Q0 - P B R^-1 B' P. Cheap and gain-free; refined by the
// Newton sweeps afterwards.
Eigen::MatrixXd bootstrap_stabilizer(const Eigen::MatrixXd& A,
                                     const Eigen::MatrixXd& B,
                                     const Eigen::MatrixXd& R_inv) {
  const auto n = A.rows();
  const Eigen::MatrixXd Q0 = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd P = Q0;
  const double dt = 1e-3;
  for (int i = 0; i < 400000; ++i) {
    const Eigen::MatrixXd Pdot =
        A.transpose() * P + P * A + Q0 - P * B * R_inv * B.transpose() * P;
    P += dt * Pdot;
    if (!P.allFinite())
      throw GammaTooSmallError("gare: stabilizing bootstrap diverged; (A, B) not stabilizable?");
    if (Pdot.cwiseAbs().maxCoeff() < 1e-9) break;
  }
  return R_inv * B.transpose() * P;
}

}  // namespace

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C) {
  const auto n = A.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  // vec(A'X + XA) = (I (x) A' + A' (x) I) vec(X), column-major stacking
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    op.block(j * n, j * n, n, n) += A.transpose();
    for (Eigen::Index l = 0; l < n; ++l)
      op.block(j * n, l * n, n, n) += A(l, j) * I;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(op);
  if (!lu.isInvertible())
    throw StepFailureError("lyapunov: operator is singular (eigenvalue pair sums to zero)");
  Eigen::VectorXd vecC(n * n);
  for (Eigen::Index j = 0; j < n; ++j) vecC.segment(j * n, n) = -C.col(j);
  const Eigen::VectorXd vecX = lu.solve(vecC);
  Eigen::MatrixXd X(n, n);
  for (Eigen::Index j = 0; j < n; ++j) X.col(j) = vecX.segment(j * n, n);
  return 0.5 * (X + X.transpose());
}

Eigen::MatrixXd GareSolution::residual(const Eigen::MatrixXd& A,
                                       const Eigen::MatrixXd& B,
                                       const Eigen::MatrixXd& D,
                                       const Eigen::MatrixXd& Qm,
                                       const Eigen::MatrixXd& R,
                                       double gamma) const {
  const Eigen::MatrixXd R_inv = R.inverse();
  return A.transpose() * P + P * A + Qm -
         P * B * R_inv * B.transpose() * P +
         P * D * D.transpose() * P / (gamma * gamma);
}

GareSolution solve_gare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& D, const Eigen::MatrixXd& Qm,
                        const Eigen::MatrixXd& R, double gamma) {
  const auto n = A.rows();
  if (A.cols() != n || B.rows() != n || D.rows() != n || Qm.rows() != n ||
      Qm.cols() != n || R.rows() != B.cols() || R.cols() != B.cols())
    throw std::invalid_argument("solve_gare: dimension mismatch");
  if (gamma <= 0.0) throw std::invalid_argument("solve_gare: gamma must be positive");

  const Eigen::MatrixXd R_inv = R.inverse();
  const double g2 = gamma * gamma;

  // Phase 1: disturbance-free Riccati solution by Newton (Kleinman) sweeps.
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(B.cols(), n);
  if (max_real_eigenvalue(A) >= 0.0 && B.squaredNorm() > 0.0)
    K = bootstrap_stabilizer(A, B, R_inv);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < 200; ++i) {
    const Eigen::MatrixXd Ak = A - B * K;
    Eigen::MatrixXd P_next;
    try {
      P_next = solve_lyapunov(Ak, Qm + K.transpose() * R * K);
    } catch (const StepFailureError&) {
      throw GammaTooSmallError("gare: disturbance-free Lyapunov step singular");
    }
    const double delta = (P_next - P).cwiseAbs().maxCoeff();
    P = P_next;
    K = R_inv * B.transpose() * P;
    if (delta < 1e-13 * (1.0 + P.cwiseAbs().maxCoeff())) break;
  }

  // Phase 2: reintroduce the disturbance channel, updating both gains each
  // sweep until the game equation's fixed point is reached.
  for (int i = 0; i < 500; ++i) {
    K = R_inv * B.transpose() * P;
    const Eigen::MatrixXd L = D.transpose() * P / g2;
    const Eigen::MatrixXd Ac = A - B * K + D * L;
    Eigen::MatrixXd P_next;
    try {
      P_next = solve_lyapunov(
          Ac, Qm + K.transpose() * R * K - g2 * L.transpose() * L);
    } catch (const StepFailureError&) {
      throw GammaTooSmallError("gare: game Lyapunov step singular; gamma too small");
    }
    if (!P_next.allFinite() || P_next.cwiseAbs().maxCoeff() > 1e12)
      throw GammaTooSmallError("gare: iteration diverged; gamma too small");
    const double delta = (P_next - P).cwiseAbs().maxCoeff();
    P = P_next;
    if (delta < 1e-13 * (1.0 + P.cwiseAbs().maxCoeff())) break;
  }

  GareSolution sol;
  sol.P = 0.5 * (P + P.transpose());
  sol.K = R_inv * B.transpose() * sol.P;
  sol.L = D.transpose() * sol.P / g2;

  const double res_norm = sol.residual(A, B, D, Qm, R, gamma).norm();
  const double res_scale = std::max(1.0, Qm.norm());
  if (!(res_norm <= 1e-8 * res_scale))
    throw GammaTooSmallError("gare: residual " + std::to_string(res_norm) +
                             " exceeds tolerance; gamma too small or instance infeasible");
  const Eigen::MatrixXd Ac = A - B * sol.K + D * sol.L;
  if (max_real_eigenvalue(Ac) >= 0.0)
    throw GammaTooSmallError("gare: closed loop not Hurwitz at the computed solution");
  return sol;
}

}  // namespace alphapi
