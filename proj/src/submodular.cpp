#include "osgcoord/submodular.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace osgcoord {

namespace {

std::vector<ActionId>::const_iterator find_agent(const std::vector<ActionId>& entries,
                                                 AgentId agent) {
  return std::lower_bound(entries.begin(), entries.end(), agent,
                          [](const ActionId& e, AgentId a) { return e.agent < a; });
}

}  // namespace

bool ActionProfile::contains_agent(AgentId agent) const {
  auto it = find_agent(entries_, agent);
  return it != entries_.end() && it->agent == agent;
}

std::optional<int> ActionProfile::action_for(AgentId agent) const {
  auto it = find_agent(entries_, agent);
  if (it == entries_.end() || it->agent != agent) return std::nullopt;
  return it->index;
}

void ActionProfile::insert(ActionId action) {
  auto it = find_agent(entries_, action.agent);
  if (it != entries_.end() && it->agent == action.agent) {
    throw std::invalid_argument("profile already binds agent " +
                                std::to_string(action.agent));
  }
  entries_.insert(it, action);
}

ActionProfile ActionProfile::with(ActionId action) const {
  ActionProfile copy = *this;
  copy.insert(action);
  return copy;
}

ActionProfile ActionProfile::without(AgentId agent) const {
  ActionProfile copy = *this;
  auto it = find_agent(copy.entries_, agent);
  if (it != copy.entries_.end() && it->agent == agent) copy.entries_.erase(it);
  return copy;
}

std::string to_string(const ActionProfile& profile) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const ActionId& e : profile.entries()) {
    if (!first) os << ", ";
    os << e.agent << ":" << e.index;
    first = false;
  }
  os << "}";
  return os.str();
}

double marginal_gain(const ObjectiveOracle& objective, ActionId action,
                     const ActionProfile& base) {
  if (base.contains_agent(action.agent)) {
    throw std::invalid_argument("marginal_gain: base profile already binds agent " +
                                std::to_string(action.agent));
  }
  return objective.eval(base.with(action)) - objective.eval(base);
}

namespace {

constexpr std::int64_t kMaxProfiles = 100000;

// Mixed-radix code of a partial assignment: digit i is action+1, 0 = absent.
struct ProfileSpace {
  std::vector<int> sizes;
  std::vector<std::int64_t> strides;
  std::int64_t count = 1;

  explicit ProfileSpace(const std::vector<int>& agent_action_sizes)
      : sizes(agent_action_sizes) {
    if (sizes.empty()) throw std::invalid_argument("no agents");
    strides.resize(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (sizes[i] < 1) throw std::invalid_argument("empty action set");
      strides[i] = count;
      count *= sizes[i] + 1;
      if (count > kMaxProfiles) {
        throw std::invalid_argument(
            "enumeration too large: more than 100000 partial profiles");
      }
    }
  }

  ActionProfile decode(std::int64_t code) const {
    ActionProfile profile;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const int digit = static_cast<int>(code / strides[i] % (sizes[i] + 1));
      if (digit > 0) profile.insert({static_cast<AgentId>(i), digit - 1});
    }
    return profile;
  }
};

// Enumerates all nested pairs (A, B) with A a subset of B as assignment
// vectors; digit -1 means the agent is unbound.
class NestedPairCursor {
 public:
  explicit NestedPairCursor(const std::vector<int>& sizes)
      : sizes_(sizes), option_(sizes.size(), 0) {
    for (int s : sizes_) option_counts_.push_back(1 + 2 * s);
  }

  bool done() const { return done_; }

  void advance() {
    for (std::size_t i = 0; i < option_.size(); ++i) {
      if (++option_[i] < option_counts_[i]) return;
      option_[i] = 0;
    }
    done_ = true;
  }

  // Option o for agent i: 0 -> (absent, absent); 1..s -> (absent, o-1);
  // s+1..2s -> (o-s-1, o-s-1).
  void materialize(std::vector<int>& a, std::vector<int>& b) const {
    a.assign(sizes_.size(), -1);
    b.assign(sizes_.size(), -1);
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      const int o = option_[i];
      const int s = sizes_[i];
      if (o == 0) continue;
      if (o <= s) {
        b[i] = o - 1;
      } else {
        a[i] = o - s - 1;
        b[i] = o - s - 1;
      }
    }
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> option_counts_;
  std::vector<int> option_;
  bool done_ = false;
};

}  // namespace

std::vector<ActionProfile> enumerate_profiles(
    const std::vector<int>& agent_action_sizes) {
  ProfileSpace space(agent_action_sizes);
  std::vector<ActionProfile> out;
  out.reserve(static_cast<std::size_t>(space.count));
  for (std::int64_t code = 0; code < space.count; ++code) {
    out.push_back(space.decode(code));
  }
  return out;
}

CheckReport check_normalized_monotone_submodular(
    const ObjectiveOracle& objective, const std::vector<int>& agent_action_sizes,
    double tolerance) {
  ProfileSpace space(agent_action_sizes);
  const std::size_t n_agents = agent_action_sizes.size();

  // Evaluate every partial profile once.
  std::vector<double> value(static_cast<std::size_t>(space.count));
  std::vector<ActionProfile> profile(static_cast<std::size_t>(space.count));
  for (std::int64_t code = 0; code < space.count; ++code) {
    profile[code] = space.decode(code);
    value[code] = objective.eval(profile[code]);
  }

  auto code_of = [&](const std::vector<int>& assign) {
    std::int64_t code = 0;
    for (std::size_t i = 0; i < n_agents; ++i) {
      code += space.strides[i] * (assign[i] + 1);
    }
    return code;
  };

  CheckReport report;
  report.empty_value = value[0];
  report.normalized = std::abs(report.empty_value) <= tolerance;

  // Monotonicity over every nested pair.
  report.monotone = true;
  std::vector<int> a_assign, b_assign;
  for (NestedPairCursor cur(agent_action_sizes); !cur.done(); cur.advance()) {
    cur.materialize(a_assign, b_assign);
    const std::int64_t ca = code_of(a_assign);
    const std::int64_t cb = code_of(b_assign);
    if (value[ca] > value[cb] + tolerance) {
      report.monotone = false;
      report.monotonicity_witness =
          MonotonicityWitness{profile[ca], profile[cb], value[ca], value[cb]};
      break;
    }
  }

  // Submodularity over every (A subset of B, action outside B) triple.
  report.submodular = true;
  for (NestedPairCursor cur(agent_action_sizes);
       !cur.done() && report.submodular; cur.advance()) {
    cur.materialize(a_assign, b_assign);
    const std::int64_t ca = code_of(a_assign);
    const std::int64_t cb = code_of(b_assign);
    for (std::size_t g = 0; g < n_agents && report.submodular; ++g) {
      if (b_assign[g] != -1) continue;  // agent bound in B, no s to add
      for (int v = 0; v < agent_action_sizes[g]; ++v) {
        const std::int64_t ca_s = ca + space.strides[g] * (v + 1);
        const std::int64_t cb_s = cb + space.strides[g] * (v + 1);
        const double gain_a = value[ca_s] - value[ca];
        const double gain_b = value[cb_s] - value[cb];
        if (gain_a < gain_b - tolerance) {
          report.submodular = false;
          report.submodularity_witness = SubmodularityWitness{
              profile[ca], profile[cb], ActionId{static_cast<AgentId>(g), v},
              gain_a, gain_b};
          break;
        }
      }
    }
  }

  return report;
}

std::string describe(const CheckReport& report) {
  std::ostringstream os;
  os << "normalized=" << (report.normalized ? "pass" : "FAIL")
     << " monotone=" << (report.monotone ? "pass" : "FAIL")
     << " submodular=" << (report.submodular ? "pass" : "FAIL");
  if (!report.normalized) {
    os << "\n  f(empty) = " << report.empty_value;
  }
  if (report.monotonicity_witness) {
    const auto& w = *report.monotonicity_witness;
    os << "\n  monotonicity witness: f(" << to_string(w.subset) << ") = "
       << w.subset_value << " > f(" << to_string(w.superset) << ") = "
       << w.superset_value;
  }
  if (report.submodularity_witness) {
    const auto& w = *report.submodularity_witness;
    os << "\n  submodularity witness: adding " << w.added.agent << ":"
       << w.added.index << " gains " << w.subset_gain << " on "
       << to_string(w.subset) << " but " << w.superset_gain << " on "
       << to_string(w.superset);
  }
  return os.str();
}

}  // namespace osgcoord
