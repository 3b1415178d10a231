#include "osgcoord/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace osgcoord {

ScenarioKind scenario_from_name(std::string_view name) {
  if (name == "straight_line") return ScenarioKind::kStraightLine;
  if (name == "noisy_rect") return ScenarioKind::kNoisyRect;
  if (name == "adversarial") return ScenarioKind::kAdversarial;
  throw std::invalid_argument("unknown scenario '" + std::string(name) +
                              "' (expected straight_line|noisy_rect|adversarial)");
}

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kStraightLine: return "straight_line";
    case ScenarioKind::kNoisyRect: return "noisy_rect";
    case ScenarioKind::kAdversarial: return "adversarial";
  }
  return "?";
}

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(ws);
  return std::string(s.substr(begin, end - begin + 1));
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& message) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& name, int line, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(name, line, "expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& name, int line, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(name, line, "expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& name, int line, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(name, line, "expected a nonnegative integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& name, int line, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(name, line, "expected true/false, got '" + value + "'");
}

// "x,y ; x,y ; ..." -> list of points
std::vector<Vec2> parse_vec2_list(const std::string& name, int line,
                                  const std::string& value) {
  std::vector<Vec2> out;
  std::stringstream items(value);
  std::string item;
  while (std::getline(items, item, ';')) {
    const std::string entry = trim(item);
    if (entry.empty()) continue;
    const auto comma = entry.find(',');
    if (comma == std::string::npos) {
      fail(name, line, "expected 'x,y' pairs separated by ';', got '" + entry + "'");
    }
    Vec2 v;
    v.x = parse_double(name, line, trim(entry.substr(0, comma)));
    v.y = parse_double(name, line, trim(entry.substr(comma + 1)));
    out.push_back(v);
  }
  if (out.empty()) fail(name, line, "empty point list");
  return out;
}

}  // namespace

ScenarioConfig parse_config_text(std::string_view text, const std::string& name) {
  ScenarioConfig config;
  bool velocities_given = false;

  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(name, line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, line_no, "missing key");
    if (value.empty()) fail(name, line_no, "missing value for '" + key + "'");

    if (key == "scenario") {
      try {
        config.scenario = scenario_from_name(value);
      } catch (const std::exception& e) {
        fail(name, line_no, e.what());
      }
    } else if (key == "horizon_s") {
      config.horizon_s = parse_double(name, line_no, value);
    } else if (key == "steps") {
      config.steps = static_cast<int>(parse_int(name, line_no, value));
    } else if (key == "policy") {
      try {
        config.policy = policy_from_name(value);
      } catch (const std::exception& e) {
        fail(name, line_no, e.what());
      }
    } else if (key == "master_seed") {
      config.master_seed = parse_u64(name, line_no, value);
    } else if (key == "instances") {
      config.instances = static_cast<int>(parse_int(name, line_no, value));
    } else if (key == "reward_scale") {
      if (value == "auto") {
        config.reward_scale_auto = true;
      } else {
        config.reward_scale_auto = false;
        config.reward_scale = parse_double(name, line_no, value);
      }
    } else if (key == "compute_opt") {
      config.compute_opt = parse_bool(name, line_no, value);
    } else if (key == "tail_fraction") {
      config.tail_fraction = parse_double(name, line_no, value);
    } else if (key == "out_csv") {
      config.out_csv = value;
    } else if (key == "out_summary") {
      config.out_summary = value;
    } else if (key == "robots") {
      config.robots = parse_vec2_list(name, line_no, value);
    } else if (key == "targets") {
      config.targets = parse_vec2_list(name, line_no, value);
    } else if (key == "target_velocities") {
      config.target_velocities = parse_vec2_list(name, line_no, value);
      velocities_given = true;
    } else if (key == "rect_origin") {
      config.rect_origin = parse_vec2_list(name, line_no, value).front();
    } else if (key == "rect_width_units") {
      config.rect_width = parse_double(name, line_no, value);
    } else if (key == "rect_height_units") {
      config.rect_height = parse_double(name, line_no, value);
    } else if (key == "noise_variance") {
      config.noise_variance = parse_double(name, line_no, value);
    } else if (key == "trigger_radius_units") {
      config.adversarial.trigger_radius = parse_double(name, line_no, value);
    } else if (key == "dodge_speed_units_s") {
      config.adversarial.dodge_speed = parse_double(name, line_no, value);
    } else if (key == "dodge_duration_s") {
      config.adversarial.dodge_duration = parse_double(name, line_no, value);
    } else if (key == "return_duration_s") {
      config.adversarial.return_duration = parse_double(name, line_no, value);
    } else if (key == "return_vertical_speed_units_s") {
      config.adversarial.return_vertical_speed = parse_double(name, line_no, value);
    } else if (key == "return_horizontal_speed_units_s") {
      config.adversarial.return_horizontal_speed = parse_double(name, line_no, value);
    } else if (key == "nominal_speed_units_s") {
      config.adversarial.nominal_speed = parse_double(name, line_no, value);
    } else {
      fail(name, line_no, "unknown key '" + key + "'");
    }
  }

  // Default straight-line velocities: every target moves right at 1 unit/s.
  if (!velocities_given) {
    config.target_velocities.assign(config.targets.size(), Vec2{1.0, 0.0});
  }

  validate_config(config, name);
  return config;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config_text(buffer.str(), path);
}

void validate_config(const ScenarioConfig& config, const std::string& name) {
  auto bad = [&](const std::string& message) {
    throw std::runtime_error(name + ": " + message);
  };
  if (config.steps < 1) bad("steps must be >= 1");
  if (!(config.horizon_s > 0.0)) bad("horizon_s must be positive");
  if (config.instances < 1) bad("instances must be >= 1");
  if (config.robots.empty()) bad("at least one robot required");
  if (config.targets.empty()) bad("at least one target required");
  if (!(config.tail_fraction > 0.0 && config.tail_fraction <= 1.0)) {
    bad("tail_fraction must be in (0, 1]");
  }
  if (!config.reward_scale_auto && !(config.reward_scale > 0.0)) {
    bad("reward_scale must be positive or 'auto'");
  }
  if (config.scenario == ScenarioKind::kStraightLine &&
      config.target_velocities.size() != config.targets.size()) {
    bad("target_velocities must list one velocity per target");
  }
  if (config.scenario == ScenarioKind::kNoisyRect) {
    if (!(config.rect_width > 0.0) || !(config.rect_height > 0.0)) {
      bad("rectangle dimensions must be positive");
    }
    if (config.noise_variance < 0.0) bad("noise_variance must be >= 0");
  }
  if (config.scenario == ScenarioKind::kAdversarial) {
    const AdversarialParams& a = config.adversarial;
    if (!(a.trigger_radius > 0.0) || !(a.dodge_speed > 0.0) ||
        !(a.dodge_duration > 0.0) || !(a.return_duration > 0.0)) {
      bad("adversarial parameters must be positive");
    }
  }
}

TrackingScenario to_tracking_scenario(const ScenarioConfig& config,
                                      std::uint64_t instance_seed) {
  TrackingScenario scenario;
  scenario.dt = config.dt();
  scenario.robots = config.robots;
  scenario.seed = instance_seed;
  for (std::size_t j = 0; j < config.targets.size(); ++j) {
    TargetState t;
    t.position = config.targets[j];
    switch (config.scenario) {
      case ScenarioKind::kStraightLine:
        t.behavior = StraightLineTarget{config.target_velocities[j]};
        break;
      case ScenarioKind::kNoisyRect: {
        NoisyRectTarget rect;
        rect.path = RectPath{config.rect_origin, config.rect_width,
                             config.rect_height};
        rect.lateral_variance = config.noise_variance;
        t.behavior = rect;
        break;
      }
      case ScenarioKind::kAdversarial: {
        AdversarialTarget adv;
        adv.params = config.adversarial;
        t.behavior = adv;
        break;
      }
    }
    scenario.targets.push_back(std::move(t));
  }
  return scenario;
}

}  // namespace osgcoord
