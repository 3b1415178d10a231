#pragma once

#include <string_view>
#include <vector>

#include "osgcoord/rng.hpp"
#include "osgcoord/submodular.hpp"

namespace osgcoord {

enum class PolicyKind {
  kOsg,
  kSgClairvoyant,
  kSgHat,
  kBruteForceOpt,
  kUniformRandom,
};

PolicyKind policy_from_name(std::string_view name);
std::string_view policy_name(PolicyKind kind);

// Sequential greedy on the current step's objective (clairvoyant use only):
// agents pick, in index order, the action of largest marginal gain given
// the earlier agents' picks. Argmax ties go to the lowest action index.
ActionProfile sg_select(const ObjectiveOracle& objective,
                        const std::vector<int>& action_sizes);

// Lagged greedy: sequential greedy on the previous step's objective. With
// no previous objective (t = 1) every agent takes action 0.
ActionProfile sg_hat_select(const ObjectiveOracle* previous_objective,
                            const std::vector<int>& action_sizes);

struct OptResult {
  ActionProfile profile;
  double value = 0.0;
};

// Exhaustive maximum over all full profiles; guards instances above 10^6
// profiles. Ties are broken toward the lexicographically smallest action
// index tuple (agent 0 first) so the result is deterministic.
OptResult brute_force_opt(const ObjectiveOracle& objective,
                          const std::vector<int>& action_sizes);

ActionProfile uniform_random_select(const std::vector<int>& action_sizes,
                                    RandomStream& rng);

}  // namespace osgcoord
