#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "osgcoord/baselines.hpp"
#include "osgcoord/tracking_sim.hpp"

namespace osgcoord {

enum class ScenarioKind { kStraightLine, kNoisyRect, kAdversarial };

ScenarioKind scenario_from_name(std::string_view name);
std::string_view scenario_name(ScenarioKind kind);

// One experiment description, read from a flat key = value file. Key names
// carry explicit units (horizon_s, trigger_radius_units, ...); the
// replanning frequency is always derived as steps / horizon_s.
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::kStraightLine;
  double horizon_s = 50.0;
  int steps = 1000;
  PolicyKind policy = PolicyKind::kOsg;
  std::uint64_t master_seed = 0;
  int instances = 1;
  bool reward_scale_auto = true;  // auto: the environment's singleton-gain bound
  double reward_scale = 1.0;      // used when reward_scale_auto is false
  bool compute_opt = false;
  double tail_fraction = 0.4;  // summary statistics use the last 40% of steps
  std::string out_csv;
  std::string out_summary;

  std::vector<Vec2> robots = {{0.0, 3.0}, {0.0, -3.0}};
  std::vector<Vec2> targets = {{0.5, 3.0}, {0.5, -3.0}};

  // straight_line
  std::vector<Vec2> target_velocities = {{1.0, 0.0}, {1.0, 0.0}};

  // noisy_rect
  Vec2 rect_origin = {0.0, 0.0};
  double rect_width = 20.0;
  double rect_height = 10.0;
  double noise_variance = 2.0;

  // adversarial
  AdversarialParams adversarial;

  double dt() const { return horizon_s / steps; }
  double frequency_hz() const { return steps / horizon_s; }
};

// Parses and validates; errors carry "<name>:<line>: message".
ScenarioConfig parse_config_text(std::string_view text, const std::string& name);
ScenarioConfig parse_config_file(const std::string& path);

void validate_config(const ScenarioConfig& config, const std::string& name);

// Instantiates the simulator world for one instance seed.
TrackingScenario to_tracking_scenario(const ScenarioConfig& config,
                                      std::uint64_t instance_seed);

}  // namespace osgcoord
