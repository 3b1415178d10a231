#pragma once

#include <vector>

#include "osgcoord/trace.hpp"

namespace osgcoord {

// 1/2-approximate tracking regret: half the accumulated per-step optimum
// minus the accumulated value of the chosen profiles. Can be negative when
// the chosen actions beat half the optimum. Requires per-step optima in the
// trace.
double tracking_regret_half(const Trace& trace);

// Total adversarial effect: across consecutive steps, the number of
// (agent, step) pairs where the per-step optimal action changed. Requires
// per-step optima produced with deterministic tie-breaking.
int adversarial_effect(const Trace& trace);

// Number of times the per-step best action changes over a T x |V| reward
// matrix; argmax ties go to the lowest index.
int best_expert_switches(const std::vector<std::vector<double>>& rewards);

// Explicit tracking-regret upper bound:
//   4 * sqrt(N * T * ((delta + N) * ln(max_actions * T) + N * ln(1 + ln T))).
double regret_bound_rhs(int agent_count, int total_steps, int adversarial_effect,
                        int max_actions);

}  // namespace osgcoord
