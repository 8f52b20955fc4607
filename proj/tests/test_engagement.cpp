#include <doctest.h>

#include <cmath>

#include "alphapi/engagement.hpp"

using namespace alphapi;

TEST_CASE("head-on geometry: range closes at Vm + Vt, zero LOS rate") {
  // Missile at origin flying +x, target dead ahead flying -x.
  const EngagementState s = make_engagement_state(
      {0.0, 0.0}, 0.0, 600.0, {5000.0, 0.0}, M_PI, 300.0);
  CHECK(s.theta == doctest::Approx(0.0));
  CHECK(s.closing_rate() == doctest::Approx(-900.0));
  CHECK(s.theta_dot == doctest::Approx(0.0));

  const double dt = 0.01;
  const EngagementState next = step_engagement(s, 0.0, 0.0, dt);
  CHECK(next.r == doctest::Approx(5000.0 - 900.0 * dt).epsilon(1e-10));
  CHECK(next.theta_dot == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("benchmark initial condition: theta = 0, r = 10 km") {
  const EngagementState s = make_engagement_state(
      {0.0, 0.0}, 0.0, 600.0, {10000.0, 0.0}, 170.0 * M_PI / 180.0, 300.0);
  CHECK(s.theta == doctest::Approx(0.0));
  CHECK(s.r == doctest::Approx(10000.0));
  // Closing at Vt cos(170 deg) - Vm.
  CHECK(s.closing_rate() ==
        doctest::Approx(300.0 * std::cos(170.0 * M_PI / 180.0) - 600.0));
}

TEST_CASE("symmetric pursuit keeps the LOS rate at zero") {
  // Vt sin(beta - theta) = Vm sin(eta - theta) with theta = 0.
  const double eta = 30.0 * M_PI / 180.0;
  const double beta = 150.0 * M_PI / 180.0;
  EngagementState s =
      make_engagement_state({0.0, 0.0}, eta, 300.0, {1000.0, 0.0}, beta, 300.0);
  CHECK(s.theta_dot == doctest::Approx(0.0));
  for (int i = 0; i < 20; ++i) s = step_engagement(s, 0.0, 0.0, 0.01);
  CHECK(std::abs(s.theta_dot) <= 1e-9);
}

TEST_CASE("speeds are parameters: exactly conserved across steps") {
  EngagementState s = make_engagement_state(
      {0.0, 0.0}, 0.1, 600.0, {8000.0, 500.0}, 2.9, 300.0);
  for (int i = 0; i < 50; ++i) {
    s = step_engagement(s, 50.0, -30.0, 0.005);
    CHECK(s.Vm == 600.0);
    CHECK(s.Vt == 300.0);
  }
}

TEST_CASE("geometry stays consistent after stepping") {
  EngagementState s = make_engagement_state(
      {0.0, 0.0}, 0.05, 600.0, {9000.0, 300.0}, 2.95, 300.0);
  for (int i = 0; i < 100; ++i) {
    s = step_engagement(s, 20.0, 10.0, 0.005);
    const double geo_r = (s.target_pos - s.missile_pos).norm();
    CHECK(std::abs(s.r - geo_r) <= 1e-9 * s.r);
  }
}

TEST_CASE("stepping a terminal state is rejected") {
  EngagementState s = make_engagement_state(
      {0.0, 0.0}, 0.0, 600.0, {0.05, 0.0}, M_PI, 300.0);
  CHECK(s.r <= kEngagementRangeGuard);
  CHECK_THROWS_AS(step_engagement(s, 0.0, 0.0, 0.005), std::domain_error);
}
