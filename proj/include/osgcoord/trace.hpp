#pragma once

#include <cstdint>
#include <vector>

#include "osgcoord/submodular.hpp"

namespace osgcoord {

struct TraceStep {
  ActionProfile chosen;
  double value = 0.0;  // f_t(chosen)
  ActionProfile optimum;
  double optimum_value = 0.0;
  bool has_optimum = false;
};

struct TraceMeta {
  int agent_count = 0;
  int total_steps = 0;
  std::vector<int> action_sizes;
  std::uint64_t seed = 0;
};

// Per-step record of one run. The optimum fields are populated only when
// the per-step brute-force optimum was requested; its deterministic
// lexicographic tie-breaking is part of this format's contract (the
// adversarial-effect metric counts changes of the optimal profile).
struct Trace {
  TraceMeta meta;
  std::vector<TraceStep> steps;
};

}  // namespace osgcoord
