#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "osgcoord/osg.hpp"
#include "osgcoord/rng.hpp"
#include "osgcoord/submodular.hpp"

namespace osgcoord {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b);

// Every robot has the same 8 actions: 4 directions x 2 speeds.
enum class MoveDirection { kUp, kDown, kLeft, kRight };

struct RobotAction {
  MoveDirection direction = MoveDirection::kUp;
  double speed = 1.0;  // units/s
};

inline constexpr int kRobotActionCount = 8;

// Index layout: direction-major, speed 1 before speed 2.
//   0 up/1, 1 up/2, 2 down/1, 3 down/2, 4 left/1, 5 left/2, 6 right/1, 7 right/2
RobotAction robot_action(int index);
Vec2 action_displacement(int index, double dt);

// Reciprocal-distance clamp inside the objective; raw distances elsewhere.
inline constexpr double kMinOracleDistance = 0.1;

// Retrospective tracking objective for one step: each robot's hypothetical
// end position is its step-start position displaced by the profile's
// action, and the value is the sum over targets of the largest reciprocal
// distance among the profile's robots. Robots absent from the profile do
// not contribute (the empty profile scores 0).
class TrackingOracle final : public ObjectiveOracle {
 public:
  TrackingOracle(std::vector<Vec2> robot_starts, std::vector<Vec2> target_ends,
                 double dt, double min_distance = kMinOracleDistance);

  double eval(const ActionProfile& profile) const override;
  std::vector<int> action_sizes() const override;

  double dt() const { return dt_; }
  const std::vector<Vec2>& robot_starts() const { return robot_starts_; }
  const std::vector<Vec2>& target_ends() const { return target_ends_; }

 private:
  std::vector<Vec2> robot_starts_;
  std::vector<Vec2> target_ends_;
  double dt_;
  double min_distance_;
};

std::shared_ptr<const TrackingOracle> objective_oracle(
    std::vector<Vec2> robot_starts, std::vector<Vec2> target_ends, double dt);

// --- target behaviors -------------------------------------------------------

struct StraightLineTarget {
  Vec2 velocity;  // units/s
};

// Axis-aligned rectangle traversed counterclockwise from `origin`
// (bottom-left corner): right, up, left, down.
struct RectPath {
  Vec2 origin;
  double width = 0.0;
  double height = 0.0;

  double perimeter() const { return 2.0 * (width + height); }
  Vec2 point_at(double arc) const;
  Vec2 direction_at(double arc) const;
  // Arc position of the perimeter point nearest to p.
  double project(Vec2 p) const;
};

// Anchor advances along the rectangle at constant speed; the rendered
// position adds a fresh lateral offset each step, normal to the current
// edge, sampled from N(0, lateral_variance) and scaled by dt.
struct NoisyRectTarget {
  RectPath path;
  double speed = 1.0;
  double lateral_variance = 2.0;
  double arc = 0.0;
};

struct AdversarialParams {
  double trigger_radius = 1.5;
  double dodge_speed = 2.0;           // units/s, up or down
  double dodge_duration = 1.0;        // s, committed
  double return_duration = 0.05;      // s, committed
  double return_vertical_speed = 40.0;
  double return_horizontal_speed = 30.0;
  double nominal_speed = 1.0;         // units/s, rightward
};

enum class ManeuverPhase { kNominal, kDodging, kReturning };

// Three-state maneuver machine. Nominal motion is rightward along the
// nominal line; a robot within the trigger radius starts a committed dodge
// (up or down, whichever ends farther from the nearest robot; ties go up),
// followed by a committed diagonal return that lands exactly back on the
// nominal line. Dodging and Returning never re-trigger.
struct AdversarialTarget {
  AdversarialParams params;
  ManeuverPhase phase = ManeuverPhase::kNominal;
  double phase_elapsed = 0.0;
  double dodge_sign = 1.0;  // +1 up, -1 down
  double nominal_y = 0.0;
  int maneuver_count = 0;
};

using TargetBehavior =
    std::variant<StraightLineTarget, NoisyRectTarget, AdversarialTarget>;

struct TargetState {
  Vec2 position;
  TargetBehavior behavior;
};

struct WorldState {
  std::vector<Vec2> robots;
  std::vector<TargetState> targets;
  int step_index = 0;
  double dt = 0.0;
};

// Advances every target by one step of dt seconds. Adversarial targets see
// the robots' current (pre-move) positions; target_rngs supplies one stream
// per target for behaviors that draw noise.
void advance_targets(WorldState& state, std::span<RandomStream> target_rngs);

// Raw (unclamped) Euclidean distance from each target to its nearest robot.
std::vector<double> min_distance_per_target(const WorldState& state);

int total_maneuvers(const WorldState& state);

// --- environment driver ------------------------------------------------------

struct TrackingScenario {
  double dt = 0.05;
  std::vector<Vec2> robots;
  std::vector<TargetState> targets;
  std::uint64_t seed = 0;
};

// Step order: targets move first (reacting to the robots' step-start
// positions), then the robots execute their displacements; the step's
// objective is built from the robots' step-start positions and the targets'
// end-of-step positions, and stays evaluable afterwards.
class TargetTrackingEnv final : public EnvironmentDriver {
 public:
  explicit TargetTrackingEnv(const TrackingScenario& scenario);

  std::vector<int> action_sizes() const override;
  std::shared_ptr<const ObjectiveOracle> step(const ActionProfile& executed) override;

  // Split form of step() for clairvoyant baselines: the objective is fixed
  // once the targets have moved, before the robots commit.
  std::shared_ptr<const TrackingOracle> begin_step();
  void finish_step(const ActionProfile& executed);

  const WorldState& world() const { return state_; }

  // A-priori bound on the objective's singleton gains: |targets| / d_min.
  double singleton_gain_bound() const;

 private:
  WorldState state_;
  std::vector<RandomStream> target_streams_;
  std::shared_ptr<const TrackingOracle> current_;
  bool step_open_ = false;
};

std::unique_ptr<TargetTrackingEnv> make_environment(const TrackingScenario& scenario);

}  // namespace osgcoord
