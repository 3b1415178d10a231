#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <vector>

#include "osgcoord/forecaster.hpp"
#include "osgcoord/submodular.hpp"
#include "osgcoord/trace.hpp"

namespace osgcoord {

struct StepOutcome {
  ActionProfile chosen;
  std::vector<std::vector<double>> distributions;  // per agent, at selection
  std::vector<std::vector<double>> rewards_fed;    // per agent, after scaling
  double objective_value = 0.0;                    // f_t(chosen)
};

struct CoordinatorCounters {
  std::vector<std::uint64_t> marginal_evals;  // per agent: one per action per step
  std::vector<std::uint64_t> prefix_evals;    // per agent: one per step
  std::uint64_t forecaster_ops = 0;

  std::uint64_t total_marginal_evals() const {
    return std::accumulate(marginal_evals.begin(), marginal_evals.end(),
                           std::uint64_t{0});
  }
  std::uint64_t total_prefix_evals() const {
    return std::accumulate(prefix_evals.begin(), prefix_evals.end(),
                           std::uint64_t{0});
  }
};

// Online sequential coordinator: one fixed-share forecaster per agent,
// sequential sampling in agent order, and retrospective marginal-gain
// rewards computed from the revealed objective.
//
// Usage alternates select_actions() and feedback() exactly; the chosen
// profile executes in between. Selection never evaluates the objective:
// the function becomes known only after execution.
class Coordinator {
 public:
  // Each agent's sampling stream is derived from the master seed by agent
  // index, so streams are independent across agents. Marginal gains are
  // divided by reward_scale before reaching the forecasters; pick it as an
  // a-priori bound on the objective's singleton gains to keep the fed
  // rewards in [0, 1].
  Coordinator(int total_steps, std::vector<int> action_sizes, double reward_scale,
              std::uint64_t master_seed);

  int agent_count() const { return static_cast<int>(action_sizes_.size()); }
  const std::vector<int>& action_sizes() const { return action_sizes_; }
  int total_steps() const { return total_steps_; }
  int steps_completed() const { return steps_completed_; }
  double reward_scale() const { return reward_scale_; }
  std::uint64_t master_seed() const { return master_seed_; }

  ActionProfile select_actions();

  // Reveals the step's objective. Builds the per-agent prefix sets, feeds
  // each agent the scaled marginal gains of all of its actions given the
  // previous agents' executed actions, and advances every forecaster. The
  // prefix value is evaluated once per agent and reused across that agent's
  // actions.
  StepOutcome feedback(const ObjectiveOracle& objective,
                       const ActionProfile& executed);

  const CoordinatorCounters& counters() const { return counters_; }
  const Forecaster& forecaster(int agent) const { return forecasters_.at(agent); }

 private:
  int total_steps_;
  std::vector<int> action_sizes_;
  double reward_scale_;
  std::uint64_t master_seed_;
  std::vector<Forecaster> forecasters_;
  std::vector<RandomStream> streams_;
  CoordinatorCounters counters_;
  int steps_completed_ = 0;
  std::optional<ActionProfile> pending_;
  std::vector<std::vector<double>> pending_distributions_;
};

// Supplies the environment side of a run: executing a profile advances the
// world and yields the step's retrospective objective.
class EnvironmentDriver {
 public:
  virtual ~EnvironmentDriver() = default;

  virtual std::vector<int> action_sizes() const = 0;
  virtual std::shared_ptr<const ObjectiveOracle> step(
      const ActionProfile& executed) = 0;
};

struct RunOptions {
  bool compute_optimum = false;  // per-step brute-force optimum in the trace
};

using StepCallback = std::function<void(
    int step, const StepOutcome&, const ObjectiveOracle&, const TraceStep&)>;

// Full select/execute/feedback loop for total_steps steps.
Trace run(Coordinator& coordinator, EnvironmentDriver& environment,
          int total_steps, const RunOptions& options = {},
          const StepCallback& callback = nullptr);

}  // namespace osgcoord
