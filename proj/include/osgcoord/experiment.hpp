#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osgcoord/config.hpp"
#include "osgcoord/osg.hpp"

#include "json.hpp"

namespace osgcoord {

struct RunOverrides {
  std::optional<std::uint64_t> master_seed;
  std::optional<PolicyKind> policy;
  std::optional<std::string> out_csv;
  int parallel = 1;
};

// Per-instance results gathered by the experiment driver.
struct InstanceStats {
  std::uint64_t seed = 0;
  std::vector<double> tail_mean_min_distance;  // per target
  double mean_objective = 0.0;
  int maneuvers = 0;
  std::optional<double> tracking_regret;
  std::optional<int> adversarial_effect;
  CoordinatorCounters counters;  // zero for non-OSG policies
};

// Runs `instances` seeded instances of the configured scenario (instance k
// uses master_seed + k), optionally writes the per-step CSV trace, and
// returns the JSON summary. Instances may run concurrently; rows are always
// written by one writer in instance order, so output bytes depend only on
// the config.
nlohmann::json run_experiment(const ScenarioConfig& config,
                              const RunOverrides& overrides = {});

// Post-hoc regret report over a CSV trace that carries the optimum columns.
struct RegretReport {
  int agent_count = 0;
  int steps = 0;
  int max_actions = 0;
  struct PerInstance {
    int instance = 0;
    double tracking_regret = 0.0;
    int adversarial_effect = 0;
    double bound = 0.0;
  };
  std::vector<PerInstance> instances;
  double mean_tracking_regret = 0.0;
  double mean_adversarial_effect = 0.0;
  double bound_at_mean_effect = 0.0;
};

RegretReport compute_regret_report(const std::string& trace_path);

// CLI entry points; return a process exit status.
int cmd_run(const std::string& config_path, const RunOverrides& overrides);
struct CheckOptions {
  int instance_count = 50;          // sampled tracking-objective configurations
  std::uint64_t seed = 2024;
  bool inject_supermodular = false;  // negative control: must fail
};
int cmd_check(const CheckOptions& options);
int cmd_regret(const std::string& trace_path);

}  // namespace osgcoord
