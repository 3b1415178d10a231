#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "osgcoord/baselines.hpp"
#include "osgcoord/submodular.hpp"
#include "osgcoord/tracking_sim.hpp"

using namespace osgcoord;

namespace {

WorldState single_target_world(Vec2 target_pos, TargetBehavior behavior,
                               std::vector<Vec2> robots, double dt) {
  WorldState state;
  state.robots = std::move(robots);
  state.targets.push_back({target_pos, std::move(behavior)});
  state.dt = dt;
  return state;
}

AdversarialTarget adversarial_with_nominal(double nominal_y) {
  AdversarialTarget t;
  t.nominal_y = nominal_y;
  return t;
}

}  // namespace

TEST_CASE("the eight robot actions are distinct and kinematically consistent") {
  const double dt = 0.25;
  std::set<std::pair<double, double>> displacements;
  for (int a = 0; a < kRobotActionCount; ++a) {
    const Vec2 d = action_displacement(a, dt);
    displacements.insert({d.x, d.y});
    const double magnitude = std::hypot(d.x, d.y);
    const bool unit_speed = std::abs(magnitude - 1.0 * dt) < 1e-15;
    const bool double_speed = std::abs(magnitude - 2.0 * dt) < 1e-15;
    CHECK((unit_speed || double_speed));
  }
  CHECK(displacements.size() == kRobotActionCount);
  CHECK_THROWS_AS(robot_action(8), std::out_of_range);
  CHECK_THROWS_AS(robot_action(-1), std::out_of_range);
}

TEST_CASE("tracking objective scores the documented geometry") {
  const TrackingOracle oracle({{0.0, 0.0}}, {{4.0, 0.0}}, 1.0);
  CHECK(oracle.eval({}) == 0.0);

  ActionProfile right;
  right.insert({0, 6});  // right at speed 1
  CHECK(oracle.eval(right) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("a farther robot adds no marginal gain on a covered target") {
  // Robot 0 ends close to the target, robot 1 far away.
  const TrackingOracle oracle({{3.0, 0.0}, {-8.0, 0.0}}, {{4.0, 0.0}}, 0.1);
  ActionProfile near_only;
  near_only.insert({0, 6});
  const double before = oracle.eval(near_only);
  CHECK(marginal_gain(oracle, {1, 6}, near_only) == doctest::Approx(0.0));
  CHECK(oracle.eval(near_only.with({1, 6})) == doctest::Approx(before));
}

TEST_CASE("reciprocal distances are clamped inside the objective only") {
  // Robot lands exactly on the target.
  const TrackingOracle oracle({{3.9, 0.0}}, {{4.0, 0.0}}, 0.1);
  ActionProfile right;
  right.insert({0, 6});  // moves 0.1 right, onto the target
  CHECK(oracle.eval(right) == doctest::Approx(1.0 / kMinOracleDistance));

  WorldState state = single_target_world({4.0, 0.0}, StraightLineTarget{{0, 0}},
                                         {{4.0, 0.0}}, 0.1);
  CHECK(min_distance_per_target(state)[0] == doctest::Approx(0.0));
}

TEST_CASE("max over scalar sets has diminishing gains (all table rows)") {
  auto max_of = [](const std::vector<double>& xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    return m;
  };
  auto gain = [&](double s, const std::vector<double>& set) {
    std::vector<double> with = set;
    with.push_back(s);
    return max_of(with) - max_of(set);
  };
  auto check_triple = [&](double b1, double b2, double s) {
    const std::vector<double> first{b1};
    const std::vector<double> both{b1, b2};
    CHECK(gain(s, first) >= gain(s, both) - 1e-12);
  };

  // The five qualitative cases.
  check_triple(2.0, 3.0, 1.0);  // s below both
  check_triple(1.0, 3.0, 2.0);  // b1 < s < b2
  check_triple(3.0, 1.0, 2.0);  // b2 < s < b1
  check_triple(1.0, 2.0, 3.0);  // s above both
  check_triple(2.0, 2.0, 3.0);  // b1 = b2

  RandomStream rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    check_triple(rng.uniform() * 10 - 5, rng.uniform() * 10 - 5,
                 rng.uniform() * 10 - 5);
  }
}

TEST_CASE("sampled tracking objectives satisfy all three oracle properties") {
  RandomStream rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Vec2> robots{{rng.uniform() * 10 - 5, rng.uniform() * 10 - 5},
                             {rng.uniform() * 10 - 5, rng.uniform() * 10 - 5}};
    std::vector<Vec2> targets{{rng.uniform() * 10 - 5, rng.uniform() * 10 - 5},
                              {rng.uniform() * 10 - 5, rng.uniform() * 10 - 5}};
    const TrackingOracle oracle(robots, targets, 0.02 + rng.uniform() * 0.2);
    CHECK(check_normalized_monotone_submodular(oracle, oracle.action_sizes())
              .pass());
  }
}

TEST_CASE("straight-line targets integrate their velocity") {
  WorldState state = single_target_world({2.0, 1.0}, StraightLineTarget{{1.0, 0.0}},
                                         {{0.0, 0.0}}, 0.1);
  std::vector<RandomStream> rngs;
  rngs.emplace_back(1);
  advance_targets(state, rngs);
  CHECK(state.targets[0].position.x == doctest::Approx(2.1));
  CHECK(state.targets[0].position.y == doctest::Approx(1.0));
}

TEST_CASE("rectangle path walks corners in order and wraps") {
  const RectPath path{{0.0, 0.0}, 4.0, 2.0};
  CHECK(path.perimeter() == doctest::Approx(12.0));
  CHECK(path.point_at(0.0) == Vec2{0.0, 0.0});
  CHECK(path.point_at(4.0) == Vec2{4.0, 0.0});
  CHECK(path.point_at(6.0) == Vec2{4.0, 2.0});
  CHECK(path.point_at(10.0) == Vec2{0.0, 2.0});
  CHECK(path.point_at(12.5).x == doctest::Approx(0.5));
  CHECK(path.direction_at(1.0) == Vec2{1.0, 0.0});
  CHECK(path.direction_at(5.0) == Vec2{0.0, 1.0});
  CHECK(path.project(Vec2{2.0, -1.0}) == doctest::Approx(2.0));
  CHECK(path.project(Vec2{5.0, 1.0}) == doctest::Approx(5.0));
}

TEST_CASE("noise-free rectangular targets follow the rectangle exactly") {
  NoisyRectTarget rect;
  rect.path = {{0.0, 0.0}, 4.0, 2.0};
  rect.lateral_variance = 0.0;
  WorldState state = single_target_world({0.0, 0.0}, rect, {{10.0, 10.0}}, 0.5);
  std::vector<RandomStream> rngs;
  rngs.emplace_back(1);
  for (int t = 0; t < 8; ++t) advance_targets(state, rngs);  // 4 units along
  CHECK(state.targets[0].position.x == doctest::Approx(4.0));
  CHECK(state.targets[0].position.y == doctest::Approx(0.0));
  for (int t = 0; t < 4; ++t) advance_targets(state, rngs);  // 2 up the side
  CHECK(state.targets[0].position.x == doctest::Approx(4.0));
  CHECK(state.targets[0].position.y == doctest::Approx(2.0));
}

TEST_CASE("noisy rectangular targets stay near the nominal path") {
  NoisyRectTarget rect;
  rect.path = {{0.0, 0.0}, 8.0, 4.0};
  rect.lateral_variance = 2.0;
  WorldState state = single_target_world({0.0, 0.0}, rect, {{50.0, 50.0}}, 0.05);
  std::vector<RandomStream> rngs;
  rngs.emplace_back(77);
  for (int t = 0; t < 400; ++t) {
    advance_targets(state, rngs);
    const auto* behavior = std::get_if<NoisyRectTarget>(&state.targets[0].behavior);
    const Vec2 anchor = behavior->path.point_at(behavior->arc);
    // Offset magnitude is |N(0, 2)| * dt, overwhelmingly below 6 sigma.
    CHECK(distance(anchor, state.targets[0].position) < 6.0 * std::sqrt(2.0) * 0.05);
  }
}

TEST_CASE("adversarial target stays nominal outside the trigger radius") {
  WorldState state = single_target_world({0.0, 0.0}, adversarial_with_nominal(0.0),
                                         {{0.0, -2.0}}, 0.1);
  std::vector<RandomStream> rngs;
  rngs.emplace_back(1);
  advance_targets(state, rngs);
  CHECK(state.targets[0].position.x == doctest::Approx(0.1));
  CHECK(state.targets[0].position.y == doctest::Approx(0.0));
  CHECK(total_maneuvers(state) == 0);
}

TEST_CASE("adversarial target dodges away from a robot directly below") {
  WorldState state = single_target_world({0.0, 0.0}, adversarial_with_nominal(0.0),
                                         {{0.0, -1.0}}, 0.05);
  std::vector<RandomStream> rngs;
  rngs.emplace_back(1);
  advance_targets(state, rngs);
  const auto* adv = std::get_if<AdversarialTarget>(&state.targets[0].behavior);
  CHECK(adv->phase == ManeuverPhase::kDodging);
  CHECK(adv->dodge_sign == 1.0);  // up maximizes distance from the robot below
  CHECK(adv->maneuver_count == 1);
  CHECK(state.targets[0].position.y == doctest::Approx(2.0 * 0.05));
  CHECK(state.targets[0].position.x == doctest::Approx(0.0));
}

TEST_CASE("ties in the dodge direction go up") {
  WorldState state = single_target_world({0.0, 0.0}, adversarial_with_nominal(0.0),
                                         {{1.0, 0.0}}, 0.05);
  std::vector<RandomStream> rngs;
  rngs.emplace_back(1);
  advance_targets(state, rngs);
  const auto* adv = std::get_if<AdversarialTarget>(&state.targets[0].behavior);
  CHECK(adv->phase == ManeuverPhase::kDodging);
  CHECK(adv->dodge_sign == 1.0);
}

TEST_CASE("a committed dodge never re-triggers and lands back on the line") {
  const double dt = 0.05;  // 20 Hz
  WorldState state = single_target_world({0.0, 0.0}, adversarial_with_nominal(0.0),
                                         {{0.0, -1.0}}, dt);
  std::vector<RandomStream> rngs;
  rngs.emplace_back(1);

  // Dodge phase: 1 s at 2 units/s upward, 20 steps.
  for (int t = 0; t < 20; ++t) {
    advance_targets(state, rngs);
    CHECK(total_maneuvers(state) == 1);
  }
  CHECK(state.targets[0].position.y == doctest::Approx(2.0));
  CHECK(state.targets[0].position.x == doctest::Approx(0.0));

  // Return phase: one 0.05 s step moves 1.5 right and lands on the line.
  advance_targets(state, rngs);
  CHECK(state.targets[0].position.y == 0.0);  // exact snap
  CHECK(state.targets[0].position.x == doctest::Approx(1.5));
  const auto* adv = std::get_if<AdversarialTarget>(&state.targets[0].behavior);
  CHECK(adv->phase == ManeuverPhase::kNominal);
  // The robot is 1.5+ units away now; nominal motion resumes next step.
  advance_targets(state, rngs);
  CHECK(state.targets[0].position.x == doctest::Approx(1.5 + 0.05));
}

TEST_CASE("coarse steps split dodge, return, and nominal motion correctly") {
  const double dt = 0.1;  // 10 Hz: the 0.05 s return fits inside one step
  WorldState state = single_target_world({0.0, 0.0}, adversarial_with_nominal(0.0),
                                         {{0.0, -1.0}}, dt);
  std::vector<RandomStream> rngs;
  rngs.emplace_back(1);
  for (int t = 0; t < 10; ++t) advance_targets(state, rngs);  // full dodge
  CHECK(state.targets[0].position.y == doctest::Approx(2.0));

  // Return (0.05 s) plus 0.05 s of nominal motion in the same step; the
  // robot is far from the landing point so no immediate re-trigger.
  advance_targets(state, rngs);
  CHECK(state.targets[0].position.y == 0.0);
  CHECK(state.targets[0].position.x == doctest::Approx(1.5 + 0.05));
  CHECK(total_maneuvers(state) == 1);
}

TEST_CASE("min distances match a direct recount") {
  WorldState state;
  state.robots = {{0.0, 0.0}, {10.0, 0.0}};
  state.targets.push_back({{3.0, 0.0}, StraightLineTarget{{0, 0}}});
  state.targets.push_back({{9.0, 4.0}, StraightLineTarget{{0, 0}}});
  state.dt = 0.1;
  const std::vector<double> dists = min_distance_per_target(state);
  CHECK(dists[0] == doctest::Approx(3.0));
  CHECK(dists[1] == doctest::Approx(std::hypot(1.0, 4.0)));

  RandomStream rng(31);
  WorldState random_state;
  random_state.dt = 0.1;
  for (int i = 0; i < 3; ++i) {
    random_state.robots.push_back({rng.uniform() * 20, rng.uniform() * 20});
  }
  for (int j = 0; j < 4; ++j) {
    random_state.targets.push_back(
        {{rng.uniform() * 20, rng.uniform() * 20}, StraightLineTarget{{0, 0}}});
  }
  const std::vector<double> fast = min_distance_per_target(random_state);
  for (std::size_t j = 0; j < random_state.targets.size(); ++j) {
    double best = 1e300;
    for (const Vec2& r : random_state.robots) {
      best = std::min(best, distance(r, random_state.targets[j].position));
    }
    CHECK(fast[j] == doctest::Approx(best));
  }
}

TEST_CASE("environment step order: targets react to step-start robots") {
  TrackingScenario scenario;
  scenario.dt = 0.05;
  scenario.robots = {{0.0, -1.2}};
  scenario.targets.push_back({{0.0, 0.0}, adversarial_with_nominal(0.0)});
  scenario.seed = 4;
  TargetTrackingEnv env(scenario);

  // Robot starts within the trigger radius, so the first step dodges even
  // though the robot simultaneously moves away.
  ActionProfile down;
  down.insert({0, 3});  // down at speed 2
  env.step(down);
  CHECK(total_maneuvers(env.world()) == 1);
}

TEST_CASE("environment is deterministic and kinematically consistent") {
  auto build = [] {
    TrackingScenario scenario;
    scenario.dt = 0.05;
    scenario.robots = {{0.0, 1.0}, {0.0, -1.0}};
    NoisyRectTarget rect;
    rect.path = {{2.0, -3.0}, 10.0, 6.0};
    scenario.targets.push_back({{2.0, -3.0}, rect});
    scenario.targets.push_back({{12.0, 3.0}, rect});
    scenario.seed = 909;
    return scenario;
  };

  TargetTrackingEnv env_a(build());
  TargetTrackingEnv env_b(build());
  RandomStream actions(55);
  for (int t = 0; t < 100; ++t) {
    ActionProfile profile;
    for (int i = 0; i < 2; ++i) {
      profile.insert({i, static_cast<int>(actions.uniform() * kRobotActionCount)});
    }
    const std::vector<Vec2> before = env_a.world().robots;
    env_a.step(profile);
    env_b.step(profile);

    for (int i = 0; i < 2; ++i) {
      const double moved = distance(before[i], env_a.world().robots[i]);
      const bool unit_speed = std::abs(moved - 0.05) < 1e-12;
      const bool double_speed = std::abs(moved - 0.10) < 1e-12;
      CHECK((unit_speed || double_speed));
    }
    for (std::size_t j = 0; j < env_a.world().targets.size(); ++j) {
      CHECK(env_a.world().targets[j].position ==
            env_b.world().targets[j].position);
    }
  }
}

TEST_CASE("clairvoyant greedy closes in on straight-line targets") {
  TrackingScenario scenario;
  scenario.dt = 0.05;
  scenario.robots = {{0.0, 1.0}, {0.0, -1.0}};
  scenario.targets.push_back({{5.0, 3.0}, StraightLineTarget{{1.0, 0.0}}});
  scenario.targets.push_back({{5.0, -3.0}, StraightLineTarget{{1.0, 0.0}}});
  scenario.seed = 0;
  TargetTrackingEnv env(scenario);
  const std::vector<int> sizes = env.action_sizes();

  const int steps = 600;  // 30 s
  double early = 0.0;
  double late = 0.0;
  for (int t = 1; t <= steps; ++t) {
    const auto oracle = env.begin_step();
    const ActionProfile profile = sg_select(*oracle, sizes);
    env.finish_step(profile);
    const std::vector<double> dists = min_distance_per_target(env.world());
    const double mean = 0.5 * (dists[0] + dists[1]);
    if (t <= steps / 10) early += mean / (steps / 10);
    if (t > steps - steps / 10) late += mean / (steps / 10);
  }
  CHECK(late < 0.5 * early);
  CHECK(late < 1.0);
}

TEST_CASE("environment validates its construction") {
  TrackingScenario empty_robots;
  empty_robots.dt = 0.1;
  empty_robots.targets.push_back({{0, 0}, StraightLineTarget{{1, 0}}});
  CHECK_THROWS_AS(TargetTrackingEnv{empty_robots}, std::invalid_argument);

  TrackingScenario bad_dt;
  bad_dt.dt = 0.0;
  bad_dt.robots = {{0, 0}};
  bad_dt.targets.push_back({{0, 0}, StraightLineTarget{{1, 0}}});
  CHECK_THROWS_AS(TargetTrackingEnv{bad_dt}, std::invalid_argument);

  TrackingScenario good;
  good.dt = 0.1;
  good.robots = {{0, 0}};
  good.targets.push_back({{3, 0}, StraightLineTarget{{1, 0}}});
  TargetTrackingEnv env(good);
  CHECK(env.singleton_gain_bound() == doctest::Approx(1.0 / kMinOracleDistance));
  ActionProfile p;
  p.insert({0, 0});
  CHECK_THROWS_AS(env.finish_step(p), std::logic_error);  // no open step
  env.begin_step();
  CHECK_THROWS_AS(env.begin_step(), std::logic_error);  // already open
}
