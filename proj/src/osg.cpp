#include "osgcoord/osg.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "osgcoord/baselines.hpp"

namespace osgcoord {

Coordinator::Coordinator(int total_steps, std::vector<int> action_sizes,
                         double reward_scale, std::uint64_t master_seed)
    : total_steps_(total_steps),
      action_sizes_(std::move(action_sizes)),
      reward_scale_(reward_scale),
      master_seed_(master_seed) {
  if (total_steps_ < 0) throw std::invalid_argument("total_steps must be >= 0");
  if (action_sizes_.empty()) throw std::invalid_argument("no agents");
  if (!(reward_scale_ > 0.0)) {
    throw std::invalid_argument("reward_scale must be positive");
  }
  const int horizon = total_steps_ > 0 ? total_steps_ : 1;
  forecasters_.reserve(action_sizes_.size());
  streams_.reserve(action_sizes_.size());
  for (std::size_t i = 0; i < action_sizes_.size(); ++i) {
    forecasters_.emplace_back(horizon, action_sizes_[i]);
    streams_.emplace_back(derive_seed(master_seed_, stream_domain::kAgent, i));
  }
  counters_.marginal_evals.assign(action_sizes_.size(), 0);
  counters_.prefix_evals.assign(action_sizes_.size(), 0);
}

ActionProfile Coordinator::select_actions() {
  if (pending_) {
    throw std::logic_error("select_actions: feedback pending for the previous step");
  }
  if (steps_completed_ >= total_steps_) {
    throw std::logic_error("select_actions: all " + std::to_string(total_steps_) +
                           " steps consumed");
  }
  ActionProfile profile;
  pending_distributions_.clear();
  for (int i = 0; i < agent_count(); ++i) {
    std::vector<double> p = forecasters_[i].distribution();
    const int action = sample_index(p, streams_[i]);
    profile.insert({i, action});
    pending_distributions_.push_back(std::move(p));
  }
  pending_ = profile;
  return profile;
}

StepOutcome Coordinator::feedback(const ObjectiveOracle& objective,
                                  const ActionProfile& executed) {
  if (!pending_) throw std::logic_error("feedback: no selection pending");
  if (!(executed == *pending_)) {
    throw std::invalid_argument(
        "feedback: executed profile does not match the pending selection");
  }
  if (objective.action_sizes() != action_sizes_) {
    throw std::invalid_argument("feedback: objective action sets do not match");
  }

  StepOutcome outcome;
  outcome.chosen = executed;
  outcome.distributions = std::move(pending_distributions_);
  pending_distributions_.clear();

  ActionProfile prefix;
  double chosen_value = 0.0;
  for (int i = 0; i < agent_count(); ++i) {
    const double prefix_value = objective.eval(prefix);
    ++counters_.prefix_evals[i];

    const int executed_action = executed.action_for(i).value();
    std::vector<double> rewards(action_sizes_[i]);
    for (int a = 0; a < action_sizes_[i]; ++a) {
      const double value = objective.eval(prefix.with({i, a}));
      ++counters_.marginal_evals[i];
      rewards[a] = (value - prefix_value) / reward_scale_;
      if (a == executed_action) chosen_value = value;  // value of the prefix + a
    }

    forecasters_[i].observe(rewards);
    counters_.forecaster_ops += forecasters_[i].ops_per_observe();
    outcome.rewards_fed.push_back(std::move(rewards));
    prefix.insert({i, executed_action});
  }

  outcome.objective_value = chosen_value;  // after the loop: f_t of the full profile
  ++steps_completed_;
  pending_.reset();
  return outcome;
}

Trace run(Coordinator& coordinator, EnvironmentDriver& environment,
          int total_steps, const RunOptions& options, const StepCallback& callback) {
  if (environment.action_sizes() != coordinator.action_sizes()) {
    throw std::invalid_argument("run: environment/coordinator action sets differ");
  }
  Trace trace;
  trace.meta.agent_count = coordinator.agent_count();
  trace.meta.total_steps = total_steps;
  trace.meta.action_sizes = coordinator.action_sizes();
  trace.meta.seed = coordinator.master_seed();
  trace.steps.reserve(static_cast<std::size_t>(total_steps > 0 ? total_steps : 0));

  for (int t = 1; t <= total_steps; ++t) {
    const ActionProfile profile = coordinator.select_actions();
    const std::shared_ptr<const ObjectiveOracle> objective =
        environment.step(profile);
    const StepOutcome outcome = coordinator.feedback(*objective, profile);

    TraceStep step;
    step.chosen = outcome.chosen;
    step.value = outcome.objective_value;
    if (options.compute_optimum) {
      OptResult opt = brute_force_opt(*objective, coordinator.action_sizes());
      step.optimum = std::move(opt.profile);
      step.optimum_value = opt.value;
      step.has_optimum = true;
    }
    if (callback) callback(t, outcome, *objective, step);
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

}  // namespace osgcoord
