#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace alphapi {

/// Ordered set of multivariate monomials x1^e1 * ... * xn^en used as network
/// activation functions. Every term has total degree >= 1, so eval(0) = 0 and
/// any value function built on the set vanishes at the origin by construction.
class BasisSet {
 public:
  /// Each term is one exponent multi-index of length state_dim.
  /// Throws std::invalid_argument on duplicate terms, degree-0 terms,
  /// negative exponents, or length mismatches.
  BasisSet(int state_dim, std::vector<std::vector<int>> terms);

  int state_dim() const { return state_dim_; }
  int size() const { return static_cast<int>(terms_.size()); }
  const std::vector<std::vector<int>>& terms() const { return terms_; }

  /// Component j = prod_i x_i^{e_{j,i}}.
  Eigen::VectorXd eval(const Eigen::VectorXd& x) const;

  /// L x n Jacobian; row j is the analytic gradient of term j.
  Eigen::MatrixXd eval_gradient(const Eigen::VectorXd& x) const;

  /// One term per line, space-separated exponents.
  std::string to_text() const;
  static BasisSet from_text(const std::string& text, int state_dim);

  bool operator==(const BasisSet& other) const = default;

 private:
  int state_dim_;
  std::vector<std::vector<int>> terms_;
};

/// Critic / actor / disturbance activation triple.
struct BasisTriple {
  BasisSet critic;
  BasisSet actor;
  BasisSet disturbance;
};

/// The published activation sets for the two benchmark problems.
/// example_a: critic 5 terms, actor and disturbance 9 terms each.
/// missile:   critic 8 terms, actor and disturbance 3 terms each.
BasisTriple example_a_bases();
BasisTriple missile_bases();

/// All monomials of total degree 2 in n variables, ordered x1^2, x1x2, ...,
/// i.e. the terms of x' P x. Used for linear-quadratic instances.
BasisSet quadratic_basis(int state_dim);

/// All monomials of total degree 1 (the linear functions x1, ..., xn).
BasisSet linear_basis(int state_dim);

/// Reads the weights of a pure-quadratic critic into the symmetric matrix P
/// with V(x) = x' P x. Throws std::invalid_argument if any term has total
/// degree != 2.
Eigen::MatrixXd quadratic_weights_to_matrix(const BasisSet& basis,
                                            const Eigen::VectorXd& weights);

/// Inverse of quadratic_weights_to_matrix for the same basis ordering.
Eigen::VectorXd matrix_to_quadratic_weights(const BasisSet& basis,
                                            const Eigen::MatrixXd& P);

}  // namespace alphapi
