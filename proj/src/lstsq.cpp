#include "alphapi/lstsq.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "alphapi/errors.hpp"

namespace alphapi {

Eigen::VectorXd solve_bls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          const std::string& hint) {
  if (A.rows() != b.size())
    throw std::invalid_argument("solve_bls: row count mismatch");
  if (A.rows() < A.cols())
    throw std::invalid_argument("solve_bls: underdetermined system");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double s_max = sv(0);

  if (!(s_max > 0.0) || !std::isfinite(s_max)) {
    throw ExcitationError(
        0.0, "excitation insufficient: regression matrix is numerically zero. " + hint);
  }

  // Directions below the numerical-rank cutoff get the least-norm treatment:
  // they carry no information (unexcited channels, quadrature-noise residue)
  // and fitting them produces coefficients that extrapolate wildly. The
  // effective condition number decides between a plain solve and the ridge.
  const double rank_cutoff = 1e-5;
  double s_min_eff = s_max;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_cutoff * s_max) s_min_eff = sv(i);

  if (s_max / s_min_eff <= 1e12) {
    svd.setThreshold(rank_cutoff);
    return svd.solve(b);
  }

  const double lambda = 1e-10 * A.squaredNorm() / static_cast<double>(A.rows());
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ExcitationError(
        sv(sv.size() - 1),
        "excitation insufficient: rank deficient beyond ridge rescue (smallest "
        "singular value " + std::to_string(sv(sv.size() - 1)) + "). " + hint);
  }
  const Eigen::MatrixXd gram =
      A.transpose() * A + lambda * Eigen::MatrixXd::Identity(A.cols(), A.cols());
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success) {
    throw ExcitationError(
        sv(sv.size() - 1),
        "excitation insufficient: ridge-regularized system not solvable (smallest "
        "singular value " + std::to_string(sv(sv.size() - 1)) + "). " + hint);
  }
  return ldlt.solve(A.transpose() * b);
}

}  // namespace alphapi
