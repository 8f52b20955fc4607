#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "alphapi/basis.hpp"
#include "alphapi/rng.hpp"

using namespace alphapi;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("published basis sets have the printed terms and counts") {
  const BasisTriple ex = example_a_bases();
  CHECK(ex.critic.size() == 5);
  CHECK(ex.actor.size() == 9);
  CHECK(ex.disturbance.size() == 9);
  CHECK(ex.actor.terms() == ex.disturbance.terms());

  const BasisTriple mi = missile_bases();
  CHECK(mi.critic.size() == 8);
  CHECK(mi.actor.size() == 3);
  CHECK(mi.disturbance.size() == 3);
  CHECK(mi.critic.terms() ==
        std::vector<std::vector<int>>{{4, 0}, {3, 1}, {2, 2}, {1, 3}, {0, 4},
                                      {2, 0}, {1, 1}, {0, 2}});
  CHECK(mi.actor.terms() ==
        std::vector<std::vector<int>>{{0, 1}, {2, 1}, {0, 3}});
}

TEST_CASE("eval: example-a critic at ones, zeros at origin") {
  const BasisTriple ex = example_a_bases();
  const Eigen::VectorXd at_ones = ex.critic.eval(vec2(1.0, 1.0));
  CHECK(at_ones.isApprox(Eigen::VectorXd::Ones(5)));

  CHECK(ex.critic.eval(vec2(0.0, 0.0)).isZero(0.0));
  CHECK(ex.actor.eval(vec2(0.0, 0.0)).isZero(0.0));
  CHECK(missile_bases().critic.eval(vec2(0.0, 0.0)).isZero(0.0));
}

TEST_CASE("eval: missile critic at [2, 3], direct monomial values") {
  const Eigen::VectorXd v = missile_bases().critic.eval(vec2(2.0, 3.0));
  Eigen::VectorXd expected(8);
  expected << 16, 24, 36, 54, 81, 4, 6, 9;
  CHECK(v.isApprox(expected, 1e-15));
}

TEST_CASE("eval: dimension mismatch rejected") {
  const BasisSet b = example_a_bases().critic;
  Eigen::VectorXd x3(3);
  x3 << 1, 2, 3;
  CHECK_THROWS_AS(b.eval(x3), std::invalid_argument);
  CHECK_THROWS_AS(b.eval_gradient(x3), std::invalid_argument);
}

TEST_CASE("gradient: product rule on x1*x2, zero rows at origin") {
  const BasisSet b(2, {{1, 1}});
  const Eigen::MatrixXd g = b.eval_gradient(vec2(0.4, 0.5));
  CHECK(g(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g(0, 1) == doctest::Approx(0.4).epsilon(1e-15));

  // Degree >= 2 terms have vanishing gradients at the origin.
  const BasisSet deg2(2, {{2, 0}, {1, 1}, {0, 4}});
  CHECK(deg2.eval_gradient(vec2(0.0, 0.0)).isZero(0.0));
}

TEST_CASE("gradient matches central finite differences at random points") {
  const BasisTriple ex = example_a_bases();
  const BasisTriple mi = missile_bases();
  const double h = 1e-5;
  Rng rng(7);
  for (const BasisSet& b : {ex.critic, ex.actor, mi.critic, mi.actor}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x = vec2(uniform_symmetric(rng), uniform_symmetric(rng));
      const Eigen::MatrixXd g = b.eval_gradient(x);
      for (int i = 0; i < 2; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const Eigen::VectorXd fd = (b.eval(xp) - b.eval(xm)) / (2.0 * h);
        for (int j = 0; j < b.size(); ++j) {
          const double scale = std::max(1.0, std::abs(fd[j]));
          CHECK(std::abs(g(j, i) - fd[j]) <= 1e-6 * scale);
        }
      }
    }
  }
}

TEST_CASE("coordinate scaling: term of total degree d scales as c^d") {
  const BasisSet b = missile_bases().critic;
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd x = vec2(uniform_symmetric(rng), uniform_symmetric(rng));
    const double c = 0.5 + uniform_unit(rng);
    const Eigen::VectorXd base = b.eval(x);
    const Eigen::VectorXd scaled = b.eval(c * x);
    for (int j = 0; j < b.size(); ++j) {
      int degree = 0;
      for (int e : b.terms()[j]) degree += e;
      CHECK(scaled[j] ==
            doctest::Approx(std::pow(c, degree) * base[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("construction rejects duplicates, degree-0 terms, bad exponents") {
  CHECK_THROWS_AS(BasisSet(2, {{1, 0}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(BasisSet(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(BasisSet(2, {{-1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(BasisSet(2, {{1}}), std::invalid_argument);
}

TEST_CASE("text representation round-trips") {
  const BasisSet b = example_a_bases().actor;
  const BasisSet back = BasisSet::from_text(b.to_text(), 2);
  CHECK(back == b);
}

TEST_CASE("quadratic weight/matrix mapping is inverse-consistent") {
  const BasisSet b = quadratic_basis(3);
  CHECK(b.size() == 6);
  Eigen::MatrixXd P(3, 3);
  P << 2, 0.5, -1, 0.5, 3, 0.25, -1, 0.25, 1;
  const Eigen::VectorXd w = matrix_to_quadratic_weights(b, P);
  CHECK(quadratic_weights_to_matrix(b, w).isApprox(P, 1e-14));

  // x' P x must equal w . basis(x).
  Eigen::VectorXd x(3);
  x << 0.3, -0.7, 1.1;
  CHECK(w.dot(b.eval(x)) == doctest::Approx((x.transpose() * P * x).value()));
}
