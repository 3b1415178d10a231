#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace osgcoord {

// Agents are indexed 0..N-1 in a fixed order for the duration of a run.
using AgentId = int;

// One action of one agent: `index` is the position in that agent's
// action set.
struct ActionId {
  AgentId agent = 0;
  int index = 0;

  friend bool operator==(const ActionId&, const ActionId&) = default;
  friend auto operator<=>(const ActionId&, const ActionId&) = default;
};

// A set of actions with at most one entry per agent, kept sorted by agent
// id. Value type; set semantics (insertion order does not matter).
class ActionProfile {
 public:
  ActionProfile() = default;

  const std::vector<ActionId>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  bool contains_agent(AgentId agent) const;
  std::optional<int> action_for(AgentId agent) const;

  // Throws std::invalid_argument if the agent is already bound.
  void insert(ActionId action);

  // Copy of this profile with one extra action.
  ActionProfile with(ActionId action) const;

  // Copy of this profile with the agent's entry removed (no-op if absent).
  ActionProfile without(AgentId agent) const;

  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;

 private:
  std::vector<ActionId> entries_;
};

std::string to_string(const ActionProfile& profile);

// A set function over action profiles. eval() must be deterministic and
// safe to call concurrently; partial profiles are legal arguments.
class ObjectiveOracle {
 public:
  virtual ~ObjectiveOracle() = default;

  virtual double eval(const ActionProfile& profile) const = 0;

  // Per-agent action-set sizes |V_i|.
  virtual std::vector<int> action_sizes() const = 0;

  int agent_count() const { return static_cast<int>(action_sizes().size()); }
};

// Oracle backed by an arbitrary callable; used for synthetic objectives.
class FunctionOracle final : public ObjectiveOracle {
 public:
  FunctionOracle(std::vector<int> action_sizes,
                 std::function<double(const ActionProfile&)> fn)
      : sizes_(std::move(action_sizes)), fn_(std::move(fn)) {}

  double eval(const ActionProfile& profile) const override { return fn_(profile); }
  std::vector<int> action_sizes() const override { return sizes_; }

 private:
  std::vector<int> sizes_;
  std::function<double(const ActionProfile&)> fn_;
};

// f(base + action) - f(base). Throws std::invalid_argument if base already
// binds the action's agent.
double marginal_gain(const ObjectiveOracle& objective, ActionId action,
                     const ActionProfile& base);

struct MonotonicityWitness {
  ActionProfile subset;
  ActionProfile superset;
  double subset_value = 0.0;
  double superset_value = 0.0;
};

struct SubmodularityWitness {
  ActionProfile subset;
  ActionProfile superset;
  ActionId added;
  double subset_gain = 0.0;
  double superset_gain = 0.0;
};

struct CheckReport {
  bool normalized = false;
  bool monotone = false;
  bool submodular = false;
  double empty_value = 0.0;
  std::optional<MonotonicityWitness> monotonicity_witness;
  std::optional<SubmodularityWitness> submodularity_witness;

  bool pass() const { return normalized && monotone && submodular; }
};

std::string describe(const CheckReport& report);

// Exhaustively verifies f(empty) = 0, monotonicity over all nested profile
// pairs, and submodularity over all (A subset of B, action outside B)
// triples. Guards against instances with more than 10^5 partial profiles
// (std::invalid_argument). `tolerance` is absolute.
CheckReport check_normalized_monotone_submodular(
    const ObjectiveOracle& objective, const std::vector<int>& agent_action_sizes,
    double tolerance = 1e-9);

// All (possibly partial) profiles over the given action sets.
std::vector<ActionProfile> enumerate_profiles(
    const std::vector<int>& agent_action_sizes);

}  // namespace osgcoord
