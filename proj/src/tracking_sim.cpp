#include "osgcoord/tracking_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace osgcoord {

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

RobotAction robot_action(int index) {
  if (index < 0 || index >= kRobotActionCount) {
    throw std::out_of_range("robot action index out of range");
  }
  const MoveDirection dir = static_cast<MoveDirection>(index / 2);
  const double speed = (index % 2 == 0) ? 1.0 : 2.0;
  return {dir, speed};
}

Vec2 action_displacement(int index, double dt) {
  const RobotAction a = robot_action(index);
  const double step = a.speed * dt;
  switch (a.direction) {
    case MoveDirection::kUp: return {0.0, step};
    case MoveDirection::kDown: return {0.0, -step};
    case MoveDirection::kLeft: return {-step, 0.0};
    case MoveDirection::kRight: return {step, 0.0};
  }
  return {};
}

TrackingOracle::TrackingOracle(std::vector<Vec2> robot_starts,
                               std::vector<Vec2> target_ends, double dt,
                               double min_distance)
    : robot_starts_(std::move(robot_starts)),
      target_ends_(std::move(target_ends)),
      dt_(dt),
      min_distance_(min_distance) {
  if (robot_starts_.empty() || target_ends_.empty()) {
    throw std::invalid_argument("tracking oracle needs robots and targets");
  }
}

double TrackingOracle::eval(const ActionProfile& profile) const {
  double total = 0.0;
  for (const Vec2& target : target_ends_) {
    double best = 0.0;  // empty max contributes nothing
    for (const ActionId& entry : profile.entries()) {
      const Vec2 end = robot_starts_.at(entry.agent) +
                       action_displacement(entry.index, dt_);
      const double d = std::max(distance(end, target), min_distance_);
      best = std::max(best, 1.0 / d);
    }
    total += best;
  }
  return total;
}

std::vector<int> TrackingOracle::action_sizes() const {
  return std::vector<int>(robot_starts_.size(), kRobotActionCount);
}

std::shared_ptr<const TrackingOracle> objective_oracle(
    std::vector<Vec2> robot_starts, std::vector<Vec2> target_ends, double dt) {
  return std::make_shared<TrackingOracle>(std::move(robot_starts),
                                          std::move(target_ends), dt);
}

// --- rectangle path ----------------------------------------------------------

Vec2 RectPath::point_at(double arc) const {
  const double p = perimeter();
  if (!(p > 0.0)) throw std::invalid_argument("degenerate rectangle");
  double s = std::fmod(arc, p);
  if (s < 0.0) s += p;
  if (s < width) return {origin.x + s, origin.y};
  s -= width;
  if (s < height) return {origin.x + width, origin.y + s};
  s -= height;
  if (s < width) return {origin.x + width - s, origin.y + height};
  s -= width;
  return {origin.x, origin.y + height - s};
}

Vec2 RectPath::direction_at(double arc) const {
  const double p = perimeter();
  double s = std::fmod(arc, p);
  if (s < 0.0) s += p;
  if (s < width) return {1.0, 0.0};
  s -= width;
  if (s < height) return {0.0, 1.0};
  s -= height;
  if (s < width) return {-1.0, 0.0};
  return {0.0, -1.0};
}

double RectPath::project(Vec2 q) const {
  double best_arc = 0.0;
  double best_dist = std::numeric_limits<double>::infinity();
  struct Edge {
    Vec2 start;
    Vec2 dir;
    double length;
    double arc_offset;
  };
  const Edge edges[4] = {
      {origin, {1.0, 0.0}, width, 0.0},
      {{origin.x + width, origin.y}, {0.0, 1.0}, height, width},
      {{origin.x + width, origin.y + height}, {-1.0, 0.0}, width, width + height},
      {{origin.x, origin.y + height}, {0.0, -1.0}, height, 2.0 * width + height},
  };
  for (const Edge& e : edges) {
    const double along = (q.x - e.start.x) * e.dir.x + (q.y - e.start.y) * e.dir.y;
    const double clamped = std::clamp(along, 0.0, e.length);
    const Vec2 point = e.start + e.dir * clamped;
    const double d = distance(point, q);
    if (d < best_dist) {
      best_dist = d;
      best_arc = e.arc_offset + clamped;
    }
  }
  return best_arc;
}

// --- target advancement ------------------------------------------------------

namespace {

double min_robot_distance(Vec2 p, const std::vector<Vec2>& robots) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec2& r : robots) best = std::min(best, distance(p, r));
  return best;
}

double choose_dodge_sign(Vec2 position, const AdversarialParams& params,
                         const std::vector<Vec2>& robots) {
  const double reach = params.dodge_speed * params.dodge_duration;
  const Vec2 up = position + Vec2{0.0, reach};
  const Vec2 down = position - Vec2{0.0, reach};
  // Maximize the post-dodge distance to the nearest robot; ties go up.
  return min_robot_distance(up, robots) >= min_robot_distance(down, robots)
             ? 1.0
             : -1.0;
}

void advance_adversarial(Vec2& position, AdversarialTarget& target, double dt,
                         const std::vector<Vec2>& robots) {
  constexpr double kTimeEps = 1e-12;
  double remaining = dt;
  while (remaining > kTimeEps) {
    switch (target.phase) {
      case ManeuverPhase::kNominal: {
        if (min_robot_distance(position, robots) <= target.params.trigger_radius) {
          target.dodge_sign = choose_dodge_sign(position, target.params, robots);
          target.phase = ManeuverPhase::kDodging;
          target.phase_elapsed = 0.0;
          ++target.maneuver_count;
          break;  // spend the remaining time dodging
        }
        position.x += target.params.nominal_speed * remaining;
        remaining = 0.0;
        break;
      }
      case ManeuverPhase::kDodging: {
        const double tau =
            std::min(remaining, target.params.dodge_duration - target.phase_elapsed);
        position.y += target.dodge_sign * target.params.dodge_speed * tau;
        target.phase_elapsed += tau;
        remaining -= tau;
        if (target.phase_elapsed >= target.params.dodge_duration - kTimeEps) {
          target.phase = ManeuverPhase::kReturning;
          target.phase_elapsed = 0.0;
        }
        break;
      }
      case ManeuverPhase::kReturning: {
        const double tau =
            std::min(remaining, target.params.return_duration - target.phase_elapsed);
        position.x += target.params.return_horizontal_speed * tau;
        position.y -= target.dodge_sign * target.params.return_vertical_speed * tau;
        target.phase_elapsed += tau;
        remaining -= tau;
        if (target.phase_elapsed >= target.params.return_duration - kTimeEps) {
          position.y = target.nominal_y;  // land exactly on the nominal line
          target.phase = ManeuverPhase::kNominal;
          target.phase_elapsed = 0.0;
        }
        break;
      }
    }
  }
}

}  // namespace

void advance_targets(WorldState& state, std::span<RandomStream> target_rngs) {
  if (target_rngs.size() != state.targets.size()) {
    throw std::invalid_argument("advance_targets: one rng stream per target");
  }
  const double dt = state.dt;
  for (std::size_t j = 0; j < state.targets.size(); ++j) {
    TargetState& t = state.targets[j];
    if (auto* line = std::get_if<StraightLineTarget>(&t.behavior)) {
      t.position = t.position + line->velocity * dt;
    } else if (auto* rect = std::get_if<NoisyRectTarget>(&t.behavior)) {
      rect->arc = std::fmod(rect->arc + rect->speed * dt, rect->path.perimeter());
      const Vec2 anchor = rect->path.point_at(rect->arc);
      const Vec2 dir = rect->path.direction_at(rect->arc);
      const Vec2 normal{-dir.y, dir.x};
      const double lateral =
          target_rngs[j].normal(0.0, std::sqrt(rect->lateral_variance)) * dt;
      t.position = anchor + normal * lateral;
    } else if (auto* adv = std::get_if<AdversarialTarget>(&t.behavior)) {
      advance_adversarial(t.position, *adv, dt, state.robots);
    }
  }
}

std::vector<double> min_distance_per_target(const WorldState& state) {
  std::vector<double> out;
  out.reserve(state.targets.size());
  for (const TargetState& t : state.targets) {
    out.push_back(min_robot_distance(t.position, state.robots));
  }
  return out;
}

int total_maneuvers(const WorldState& state) {
  int total = 0;
  for (const TargetState& t : state.targets) {
    if (const auto* adv = std::get_if<AdversarialTarget>(&t.behavior)) {
      total += adv->maneuver_count;
    }
  }
  return total;
}

// --- environment driver ------------------------------------------------------

TargetTrackingEnv::TargetTrackingEnv(const TrackingScenario& scenario) {
  if (scenario.robots.empty()) throw std::invalid_argument("no robots");
  if (scenario.targets.empty()) throw std::invalid_argument("no targets");
  if (!(scenario.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  state_.robots = scenario.robots;
  state_.targets = scenario.targets;
  state_.dt = scenario.dt;
  for (std::size_t j = 0; j < state_.targets.size(); ++j) {
    TargetState& t = state_.targets[j];
    if (auto* adv = std::get_if<AdversarialTarget>(&t.behavior)) {
      adv->nominal_y = t.position.y;
    }
    if (auto* rect = std::get_if<NoisyRectTarget>(&t.behavior)) {
      rect->arc = rect->path.project(t.position);
      t.position = rect->path.point_at(rect->arc);
    }
    target_streams_.emplace_back(
        derive_seed(scenario.seed, stream_domain::kTarget, j));
  }
}

std::vector<int> TargetTrackingEnv::action_sizes() const {
  return std::vector<int>(state_.robots.size(), kRobotActionCount);
}

std::shared_ptr<const TrackingOracle> TargetTrackingEnv::begin_step() {
  if (step_open_) throw std::logic_error("begin_step: step already open");
  const std::vector<Vec2> robot_starts = state_.robots;
  advance_targets(state_, target_streams_);
  std::vector<Vec2> target_ends;
  target_ends.reserve(state_.targets.size());
  for (const TargetState& t : state_.targets) target_ends.push_back(t.position);
  current_ = objective_oracle(robot_starts, target_ends, state_.dt);
  step_open_ = true;
  return current_;
}

void TargetTrackingEnv::finish_step(const ActionProfile& executed) {
  if (!step_open_) throw std::logic_error("finish_step: no open step");
  for (const ActionId& entry : executed.entries()) {
    if (entry.agent < 0 || entry.agent >= static_cast<int>(state_.robots.size())) {
      throw std::invalid_argument("finish_step: unknown robot in profile");
    }
    state_.robots[entry.agent] =
        state_.robots[entry.agent] + action_displacement(entry.index, state_.dt);
  }
  ++state_.step_index;
  step_open_ = false;
}

std::shared_ptr<const ObjectiveOracle> TargetTrackingEnv::step(
    const ActionProfile& executed) {
  std::shared_ptr<const TrackingOracle> oracle = begin_step();
  finish_step(executed);
  return oracle;
}

double TargetTrackingEnv::singleton_gain_bound() const {
  return static_cast<double>(state_.targets.size()) / kMinOracleDistance;
}

std::unique_ptr<TargetTrackingEnv> make_environment(const TrackingScenario& scenario) {
  return std::make_unique<TargetTrackingEnv>(scenario);
}

}  // namespace osgcoord
