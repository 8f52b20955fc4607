#pragma once

#include <Eigen/Dense>
#include <string>

namespace alphapi {

/// Batch least squares min_w ||A w - b|| shared by both learners.
///
/// Solved by SVD when cond(A) <= 1e12. Above that a ridge term
/// lambda = 1e-10 * ||A||_F^2 / rows is added (the explicit normal-equation
/// inverse is numerically fragile on poorly excited data). If the data is
/// degenerate beyond that rescue, throws ExcitationError carrying the
/// smallest singular value and `hint` in the message.
Eigen::VectorXd solve_bls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          const std::string& hint = {});

}  // namespace alphapi
