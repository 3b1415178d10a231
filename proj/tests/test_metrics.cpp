#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "osgcoord/metrics.hpp"
#include "osgcoord/rng.hpp"

using namespace osgcoord;

namespace {

ActionProfile make_profile(const std::vector<int>& actions) {
  ActionProfile p;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    p.insert({static_cast<int>(i), actions[i]});
  }
  return p;
}

Trace make_trace(int agents, const std::vector<std::vector<int>>& chosen,
                 const std::vector<double>& values,
                 const std::vector<std::vector<int>>& opts,
                 const std::vector<double>& opt_values) {
  Trace trace;
  trace.meta.agent_count = agents;
  trace.meta.total_steps = static_cast<int>(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) {
    TraceStep step;
    step.chosen = make_profile(chosen[t]);
    step.value = values[t];
    step.optimum = make_profile(opts[t]);
    step.optimum_value = opt_values[t];
    step.has_optimum = true;
    trace.steps.push_back(step);
  }
  return trace;
}

}  // namespace

TEST_CASE("regret when the chosen profile is optimal every step") {
  const Trace trace = make_trace(1, {{0}, {1}, {0}}, {2.0, 3.0, 1.0},
                                 {{0}, {1}, {0}}, {2.0, 3.0, 1.0});
  CHECK(tracking_regret_half(trace) == doctest::Approx(-0.5 * 6.0));
}

TEST_CASE("regret of an all-zero trace is zero") {
  const Trace trace = make_trace(1, {{0}, {0}}, {0.0, 0.0}, {{0}, {0}}, {0.0, 0.0});
  CHECK(tracking_regret_half(trace) == doctest::Approx(0.0));
}

TEST_CASE("regret vanishes at exactly half the optimum") {
  const Trace trace = make_trace(1, {{0}, {0}, {0}}, {1.0, 1.0, 1.0},
                                 {{1}, {1}, {1}}, {2.0, 2.0, 2.0});
  CHECK(tracking_regret_half(trace) == doctest::Approx(0.0));
}

TEST_CASE("regret requires per-step optima") {
  Trace trace = make_trace(1, {{0}}, {1.0}, {{0}}, {1.0});
  trace.steps[0].has_optimum = false;
  CHECK_THROWS_AS(tracking_regret_half(trace), std::invalid_argument);
  CHECK_THROWS_AS(adversarial_effect(trace), std::invalid_argument);
}

TEST_CASE("adversarial effect of a constant optimal profile is zero") {
  const Trace trace = make_trace(2, {{0, 0}, {0, 0}, {0, 0}}, {1, 1, 1},
                                 {{1, 2}, {1, 2}, {1, 2}}, {2, 2, 2});
  CHECK(adversarial_effect(trace) == 0);
}

TEST_CASE("adversarial effect counts every agent change") {
  // Both agents alternate every step: (T - 1) * N = 3 * 2.
  const Trace trace = make_trace(2, {{0, 0}, {0, 0}, {0, 0}, {0, 0}}, {1, 1, 1, 1},
                                 {{0, 1}, {1, 0}, {0, 1}, {1, 0}}, {2, 2, 2, 2});
  CHECK(adversarial_effect(trace) == 6);
}

TEST_CASE("adversarial effect matches an independent recount") {
  RandomStream rng(41);
  const int steps = 60;
  const int agents = 3;
  std::vector<std::vector<int>> opts(steps, std::vector<int>(agents));
  for (auto& row : opts) {
    for (int& a : row) a = static_cast<int>(rng.uniform() * 4);
  }
  const Trace trace = make_trace(agents,
                                 std::vector<std::vector<int>>(steps, {0, 0, 0}),
                                 std::vector<double>(steps, 1.0), opts,
                                 std::vector<double>(steps, 2.0));

  int recount = 0;
  for (int t = 0; t + 1 < steps; ++t) {
    for (int i = 0; i < agents; ++i) {
      recount += opts[t][i] != opts[t + 1][i] ? 1 : 0;
    }
  }
  CHECK(adversarial_effect(trace) == recount);
}

TEST_CASE("best expert switch counting") {
  CHECK(best_expert_switches({{1, 0}, {1, 0}, {1, 0}}) == 0);
  CHECK(best_expert_switches({{1, 0}, {0, 1}, {1, 0}, {0, 1}, {1, 0}}) == 4);
  CHECK(best_expert_switches({}) == 0);
  // Ties go to the lowest index, so a tied row does not register a switch
  // away from index 0.
  CHECK(best_expert_switches({{1, 1}, {1, 1}}) == 0);
}

TEST_CASE("best expert switches match a naive recount on a random matrix") {
  RandomStream rng(13);
  std::vector<std::vector<double>> rewards(10, std::vector<double>(3));
  for (auto& row : rewards) {
    for (double& r : row) r = rng.uniform();
  }
  int recount = 0;
  auto argmax = [](const std::vector<double>& row) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i] > row[best]) best = i;
    }
    return best;
  };
  for (std::size_t t = 0; t + 1 < rewards.size(); ++t) {
    if (argmax(rewards[t]) != argmax(rewards[t + 1])) ++recount;
  }
  CHECK(best_expert_switches(rewards) == recount);
}

TEST_CASE("regret bound closed form") {
  CHECK(regret_bound_rhs(1, 1, 0, 1) == doctest::Approx(0.0));

  // Independent transcription of the bound expression.
  const double expected =
      4.0 * std::sqrt(200.0 * (2.0 * std::log(800.0) +
                               2.0 * std::log(1.0 + std::log(100.0))));
  CHECK(regret_bound_rhs(2, 100, 0, 8) == doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(regret_bound_rhs(0, 10, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(regret_bound_rhs(2, 0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(regret_bound_rhs(2, 10, -1, 2), std::invalid_argument);
  CHECK_THROWS_AS(regret_bound_rhs(2, 10, 0, 0), std::invalid_argument);
}

TEST_CASE("regret bound strictly increases with the adversarial effect") {
  double previous = regret_bound_rhs(2, 500, 0, 4);
  for (int delta = 1; delta <= 20; ++delta) {
    const double current = regret_bound_rhs(2, 500, delta, 4);
    CHECK(current > previous);
    previous = current;
  }
}

TEST_CASE("regret never exceeds half the accumulated optimum for nonnegative values") {
  RandomStream rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int steps = 25;
    std::vector<std::vector<int>> chosen(steps, {0});
    std::vector<std::vector<int>> opts(steps, {0});
    std::vector<double> values(steps), opt_values(steps);
    for (int t = 0; t < steps; ++t) {
      opt_values[t] = rng.uniform() * 5.0;
      values[t] = rng.uniform() * opt_values[t];
    }
    const Trace trace = make_trace(1, chosen, values, opts, opt_values);
    double opt_sum = 0.0;
    for (double v : opt_values) opt_sum += v;
    CHECK(tracking_regret_half(trace) <= 0.5 * opt_sum + 1e-12);
  }
}
