#include <doctest.h>

#include <cmath>

#include "alphapi/engagement.hpp"
#include "alphapi/missile_sim.hpp"

using namespace alphapi;

TEST_CASE("target maneuver: quiet phase, peak value, bounded magnitude") {
  const ManeuverSpec spec;  // 9 g sinusoid from 1.5 s, 2 s period
  CHECK(target_maneuver(1.0, spec) == 0.0);
  CHECK(target_maneuver(1.5, spec) == doctest::Approx(0.0));
  CHECK(target_maneuver(1.5 + spec.period / 4.0, spec) ==
        doctest::Approx(9.0 * 9.81));
  for (int i = 0; i <= 400; ++i) {
    const double t = i * 0.05;
    CHECK(std::abs(target_maneuver(t, spec)) <= 9.0 * 9.81 + 1e-12);
  }
  ManeuverSpec off = spec;
  off.enabled = false;
  CHECK(target_maneuver(2.0, off) == 0.0);
  CHECK_THROWS_AS(target_maneuver(-0.1, spec), std::invalid_argument);
}

namespace {

EngagementConfig quick_config() {
  EngagementConfig cfg;
  cfg.maneuver.enabled = false;
  cfg.seed = 1;
  return cfg;
}

// Ballistic reference: same kinematics with a_M identically zero.
std::pair<std::vector<double>, std::vector<double>> ballistic_theta_dot(
    const EngagementConfig& cfg) {
  EngagementState s =
      make_engagement_state(cfg.missile_pos, cfg.missile_fpa, cfg.missile_speed,
                            cfg.target_pos, cfg.target_fpa, cfg.target_speed);
  std::vector<double> t{0.0}, td{s.theta_dot};
  double time = 0.0;
  while (s.r > kEngagementRangeGuard && s.closing_rate() < 0.0 &&
         time < cfg.max_time) {
    s = step_engagement(s, 0.0, target_maneuver(time, cfg.maneuver), cfg.dt);
    time += cfg.dt;
    t.push_back(time);
    td.push_back(s.theta_dot);
  }
  return {t, td};
}

double rms_over_final_second(const std::vector<double>& t,
                             const std::vector<double>& v, double t_end) {
  double acc = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= t_end - 1.0 && t[i] <= t_end) {
      acc += v[i] * v[i];
      ++count;
    }
  return std::sqrt(acc / count);
}

}  // namespace

TEST_CASE("non-maneuvering target: interception with sub-meter miss") {
  const EngagementConfig cfg = quick_config();
  const EngagementResult res = run_engagement(cfg);
  CHECK(res.intercept);
  CHECK(res.miss_distance < 1.0);
  CHECK(res.cycles.size() >= 2);
  for (const auto& c : res.cycles) CHECK(c.iterations >= 1);
}

TEST_CASE("learned guidance suppresses the line-of-sight rate") {
  const EngagementConfig cfg = quick_config();
  const EngagementResult guided = run_engagement(cfg);
  REQUIRE(guided.intercept);
  const auto [bt, btd] = ballistic_theta_dot(cfg);

  const double guided_rms = rms_over_final_second(
      guided.time, guided.theta_dot, guided.intercept_time);
  const double ballistic_rms = rms_over_final_second(bt, btd, bt.back());
  CHECK(guided_rms < ballistic_rms);
}

TEST_CASE("engagement is deterministic for a fixed seed") {
  const EngagementConfig cfg = quick_config();
  const EngagementResult a = run_engagement(cfg);
  const EngagementResult b = run_engagement(cfg);
  CHECK(a.miss_distance == b.miss_distance);
  CHECK(a.intercept_time == b.intercept_time);
  REQUIRE(a.time.size() == b.time.size());
  CHECK(a.theta_dot == b.theta_dot);
  CHECK(a.accel_missile == b.accel_missile);
  REQUIRE(a.cycles.size() == b.cycles.size());
  for (std::size_t i = 0; i < a.cycles.size(); ++i) {
    CHECK(a.cycles[i].iterations == b.cycles[i].iterations);
    CHECK(a.cycles[i].actor_weights == b.cycles[i].actor_weights);
  }
}

TEST_CASE("commanded acceleration respects the saturation limit") {
  EngagementConfig cfg = quick_config();
  cfg.maneuver.enabled = true;
  const EngagementResult res = run_engagement(cfg);
  for (double a : res.accel_missile) CHECK(std::abs(a) <= cfg.accel_limit + 1e-12);
}
