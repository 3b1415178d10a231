#include "osgcoord/baselines.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace osgcoord {

PolicyKind policy_from_name(std::string_view name) {
  if (name == "osg") return PolicyKind::kOsg;
  if (name == "sg") return PolicyKind::kSgClairvoyant;
  if (name == "sg_hat") return PolicyKind::kSgHat;
  if (name == "opt") return PolicyKind::kBruteForceOpt;
  if (name == "uniform") return PolicyKind::kUniformRandom;
  throw std::invalid_argument("unknown policy '" + std::string(name) +
                              "' (expected osg|sg|sg_hat|opt|uniform)");
}

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kOsg: return "osg";
    case PolicyKind::kSgClairvoyant: return "sg";
    case PolicyKind::kSgHat: return "sg_hat";
    case PolicyKind::kBruteForceOpt: return "opt";
    case PolicyKind::kUniformRandom: return "uniform";
  }
  return "?";
}

ActionProfile sg_select(const ObjectiveOracle& objective,
                        const std::vector<int>& action_sizes) {
  ActionProfile prefix;
  for (std::size_t i = 0; i < action_sizes.size(); ++i) {
    if (action_sizes[i] < 1) throw std::invalid_argument("empty action set");
    // With the prefix fixed, the marginal-gain argmax equals the value argmax.
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < action_sizes[i]; ++a) {
      const double value =
          objective.eval(prefix.with({static_cast<AgentId>(i), a}));
      if (value > best_value) {
        best_value = value;
        best = a;
      }
    }
    prefix.insert({static_cast<AgentId>(i), best});
  }
  return prefix;
}

ActionProfile sg_hat_select(const ObjectiveOracle* previous_objective,
                            const std::vector<int>& action_sizes) {
  if (previous_objective == nullptr) {
    ActionProfile profile;
    for (std::size_t i = 0; i < action_sizes.size(); ++i) {
      if (action_sizes[i] < 1) throw std::invalid_argument("empty action set");
      profile.insert({static_cast<AgentId>(i), 0});
    }
    return profile;
  }
  return sg_select(*previous_objective, action_sizes);
}

OptResult brute_force_opt(const ObjectiveOracle& objective,
                          const std::vector<int>& action_sizes) {
  if (action_sizes.empty()) throw std::invalid_argument("no agents");
  double combinations = 1.0;
  for (int s : action_sizes) {
    if (s < 1) throw std::invalid_argument("empty action set");
    combinations *= s;
  }
  if (combinations > 1e6) {
    throw std::invalid_argument("enumeration too large: more than 1e6 profiles");
  }

  std::vector<int> assign(action_sizes.size(), 0);
  OptResult best;
  best.value = -std::numeric_limits<double>::infinity();
  bool done = false;
  while (!done) {
    ActionProfile profile;
    for (std::size_t i = 0; i < assign.size(); ++i) {
      profile.insert({static_cast<AgentId>(i), assign[i]});
    }
    const double value = objective.eval(profile);
    // Strict improvement keeps the lexicographically-smallest argmax, since
    // profiles are visited in ascending lexicographic order (agent 0 most
    // significant).
    if (value > best.value) {
      best.value = value;
      best.profile = profile;
    }
    done = true;
    for (std::size_t i = assign.size(); i-- > 0;) {
      if (++assign[i] < action_sizes[i]) {
        done = false;
        break;
      }
      assign[i] = 0;
    }
  }
  return best;
}

ActionProfile uniform_random_select(const std::vector<int>& action_sizes,
                                    RandomStream& rng) {
  ActionProfile profile;
  for (std::size_t i = 0; i < action_sizes.size(); ++i) {
    if (action_sizes[i] < 1) throw std::invalid_argument("empty action set");
    const int n = action_sizes[i];
    int pick = static_cast<int>(rng.uniform() * n);
    if (pick >= n) pick = n - 1;
    profile.insert({static_cast<AgentId>(i), pick});
  }
  return profile;
}

}  // namespace osgcoord
