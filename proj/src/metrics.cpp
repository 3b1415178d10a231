#include "osgcoord/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace osgcoord {

namespace {

void require_optima(const Trace& trace) {
  for (const TraceStep& step : trace.steps) {
    if (!step.has_optimum) {
      throw std::invalid_argument("trace step lacks a per-step optimum");
    }
  }
}

}  // namespace

double tracking_regret_half(const Trace& trace) {
  require_optima(trace);
  double opt_sum = 0.0;
  double value_sum = 0.0;
  for (const TraceStep& step : trace.steps) {
    opt_sum += step.optimum_value;
    value_sum += step.value;
  }
  return 0.5 * opt_sum - value_sum;
}

int adversarial_effect(const Trace& trace) {
  require_optima(trace);
  int changes = 0;
  for (std::size_t t = 0; t + 1 < trace.steps.size(); ++t) {
    const ActionProfile& a = trace.steps[t].optimum;
    const ActionProfile& b = trace.steps[t + 1].optimum;
    for (int agent = 0; agent < trace.meta.agent_count; ++agent) {
      if (a.action_for(agent) != b.action_for(agent)) ++changes;
    }
  }
  return changes;
}

int best_expert_switches(const std::vector<std::vector<double>>& rewards) {
  if (rewards.empty()) return 0;
  const std::size_t width = rewards.front().size();
  if (width == 0) throw std::invalid_argument("empty reward row");

  auto argmax = [&](const std::vector<double>& row) {
    if (row.size() != width) throw std::invalid_argument("ragged reward matrix");
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i] > row[best]) best = i;  // ties keep the lowest index
    }
    return best;
  };

  int switches = 0;
  std::size_t current = argmax(rewards.front());
  for (std::size_t t = 1; t < rewards.size(); ++t) {
    const std::size_t next = argmax(rewards[t]);
    if (next != current) ++switches;
    current = next;
  }
  return switches;
}

double regret_bound_rhs(int agent_count, int total_steps, int adversarial_effect,
                        int max_actions) {
  if (agent_count < 1 || total_steps < 1 || max_actions < 1) {
    throw std::invalid_argument("regret_bound_rhs: counts must be >= 1");
  }
  if (adversarial_effect < 0) {
    throw std::invalid_argument("regret_bound_rhs: adversarial effect must be >= 0");
  }
  const double n = agent_count;
  const double t = total_steps;
  const double log_vt = std::log(static_cast<double>(max_actions) * t);
  const double loglog = std::log(1.0 + std::log(t));
  return 4.0 * std::sqrt(n * t * ((adversarial_effect + n) * log_vt + n * loglog));
}

}  // namespace osgcoord
