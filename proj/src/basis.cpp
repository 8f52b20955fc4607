#include "alphapi/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "alphapi/errors.hpp"

namespace alphapi {

namespace {

double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

BasisSet::BasisSet(int state_dim, std::vector<std::vector<int>> terms)
    : state_dim_(state_dim), terms_(std::move(terms)) {
  if (state_dim_ <= 0) throw std::invalid_argument("basis: state_dim must be positive");
  if (terms_.empty()) throw std::invalid_argument("basis: empty term list");
  std::set<std::vector<int>> seen;
  for (const auto& t : terms_) {
    if (static_cast<int>(t.size()) != state_dim_)
      throw std::invalid_argument("basis: term length does not match state_dim");
    int degree = 0;
    for (int e : t) {
      if (e < 0) throw std::invalid_argument("basis: negative exponent");
      degree += e;
    }
    if (degree < 1)
      throw std::invalid_argument("basis: every term needs total degree >= 1");
    if (!seen.insert(t).second)
      throw std::invalid_argument("basis: duplicate term");
  }
}

Eigen::VectorXd BasisSet::eval(const Eigen::VectorXd& x) const {
  if (x.size() != state_dim_)
    throw std::invalid_argument("basis eval: dimension mismatch");
  Eigen::VectorXd out(size());
  for (int j = 0; j < size(); ++j) {
    double v = 1.0;
    for (int i = 0; i < state_dim_; ++i) v *= int_pow(x[i], terms_[j][i]);
    out[j] = v;
  }
  return out;
}

Eigen::MatrixXd BasisSet::eval_gradient(const Eigen::VectorXd& x) const {
  if (x.size() != state_dim_)
    throw std::invalid_argument("basis eval_gradient: dimension mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size(), state_dim_);
  for (int j = 0; j < size(); ++j) {
    for (int i = 0; i < state_dim_; ++i) {
      const int e = terms_[j][i];
      if (e == 0) continue;
      double v = e * int_pow(x[i], e - 1);
      for (int k = 0; k < state_dim_; ++k) {
        if (k == i) continue;
        v *= int_pow(x[k], terms_[j][k]);
      }
      out(j, i) = v;
    }
  }
  return out;
}

std::string BasisSet::to_text() const {
  std::ostringstream os;
  for (const auto& t : terms_) {
    for (int i = 0; i < state_dim_; ++i) {
      if (i) os << ' ';
      os << t[i];
    }
    os << '\n';
  }
  return os.str();
}

BasisSet BasisSet::from_text(const std::string& text, int state_dim) {
  std::vector<std::vector<int>> terms;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<int> term;
    int e;
    while (ls >> e) term.push_back(e);
    if (term.empty()) continue;  // blank line
    terms.push_back(std::move(term));
  }
  if (terms.empty()) throw ConfigError("basis text: no terms found");
  for (const auto& t : terms)
    if (static_cast<int>(t.size()) != state_dim)
      throw ConfigError("basis text: term length does not match state_dim");
  return BasisSet(state_dim, std::move(terms));
}

BasisTriple example_a_bases() {
  BasisSet critic(2, {{2, 0}, {0, 2}, {1, 1}, {4, 0}, {0, 4}});
  BasisSet actor(2, {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2},
                     {2, 1}, {1, 2}, {3, 0}, {0, 3}});
  return {critic, actor, actor};
}

BasisTriple missile_bases() {
  BasisSet critic(2, {{4, 0}, {3, 1}, {2, 2}, {1, 3}, {0, 4},
                      {2, 0}, {1, 1}, {0, 2}});
  BasisSet actor(2, {{0, 1}, {2, 1}, {0, 3}});
  return {critic, actor, actor};
}

BasisSet quadratic_basis(int state_dim) {
  std::vector<std::vector<int>> terms;
  for (int i = 0; i < state_dim; ++i) {
    for (int j = i; j < state_dim; ++j) {
      std::vector<int> t(state_dim, 0);
      t[i] += 1;
      t[j] += 1;
      terms.push_back(std::move(t));
    }
  }
  return BasisSet(state_dim, std::move(terms));
}

BasisSet linear_basis(int state_dim) {
  std::vector<std::vector<int>> terms;
  for (int i = 0; i < state_dim; ++i) {
    std::vector<int> t(state_dim, 0);
    t[i] = 1;
    terms.push_back(std::move(t));
  }
  return BasisSet(state_dim, std::move(terms));
}

Eigen::MatrixXd quadratic_weights_to_matrix(const BasisSet& basis,
                                            const Eigen::VectorXd& weights) {
  const int n = basis.state_dim();
  if (weights.size() != basis.size())
    throw std::invalid_argument("quadratic critic: weight count mismatch");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < basis.size(); ++j) {
    const auto& t = basis.terms()[j];
    const int degree = std::accumulate(t.begin(), t.end(), 0);
    if (degree != 2)
      throw std::invalid_argument("quadratic critic: term of degree != 2");
    int a = -1, b = -1;
    for (int i = 0; i < n; ++i) {
      if (t[i] == 2) a = b = i;
      if (t[i] == 1) (a < 0 ? a : b) = i;
    }
    if (a == b) {
      P(a, a) += weights[j];
    } else {
      P(a, b) += 0.5 * weights[j];
      P(b, a) += 0.5 * weights[j];
    }
  }
  return P;
}

Eigen::VectorXd matrix_to_quadratic_weights(const BasisSet& basis,
                                            const Eigen::MatrixXd& P) {
  const int n = basis.state_dim();
  Eigen::VectorXd w(basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    const auto& t = basis.terms()[j];
    if (std::accumulate(t.begin(), t.end(), 0) != 2)
      throw std::invalid_argument("quadratic critic: term of degree != 2");
    int a = -1, b = -1;
    for (int i = 0; i < n; ++i) {
      if (t[i] == 2) a = b = i;
      if (t[i] == 1) (a < 0 ? a : b) = i;
    }
    w[j] = (a == b) ? P(a, a) : P(a, b) + P(b, a);
  }
  return w;
}

}  // namespace alphapi
