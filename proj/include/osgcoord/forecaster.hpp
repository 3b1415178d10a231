#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "osgcoord/rng.hpp"

namespace osgcoord {

// ceil(log2(n)) in integer arithmetic; exact for all n >= 1.
int ceil_log2(std::uint64_t n);

// Parameters of the multi-rate fixed-share forecaster. `expert_count`
// parallel sub-forecasters run with geometrically spaced learning rates;
// a meta layer mixes their distributions.
struct ForecasterParams {
  int total_steps = 0;             // T
  int action_count = 0;            // |V|
  int expert_count = 0;            // J = ceil(log2 T), clamped to >= 1
  double meta_rate = 0.0;          // learning rate of the meta layer
  double share = 0.0;              // fixed-share mixing fraction, 1/T
  std::vector<double> expert_rates;  // rate of sub-forecaster j: sqrt(ln(|V| T) / 2^j), j = 0..J-1

  static ForecasterParams make(int total_steps, int action_count);
};

// Multi-rate fixed-share forecaster over one agent's actions.
//
// Weights are stored in the log domain and each update ends with a
// max-subtraction renormalization. The update is positively homogeneous in
// the weights and the output distribution depends only on weight ratios,
// so the renormalization does not change any output; it keeps entries
// finite for arbitrarily long reward streams.
class Forecaster {
 public:
  Forecaster(int total_steps, int action_count);

  const ForecasterParams& params() const { return params_; }
  int step() const { return step_; }  // 1-based

  // Mixture distribution over actions for the current step: the meta layer's
  // convex combination of the sub-forecasters' normalized weights.
  std::vector<double> distribution() const;

  // Reveals the full reward vector for the current step and advances to the
  // next one. Rewards must be finite; any range is accepted, but the
  // tracking guarantee is stated for rewards in [0, 1] (callers rescale).
  void observe(std::span<const double> rewards);

  // Coarse tally of the additions/multiplications/exponentials one observe()
  // performs; used by the coordinator's instrumentation.
  std::uint64_t ops_per_observe() const;

  const std::vector<double>& log_meta_weights() const { return log_meta_; }
  const std::vector<std::vector<double>>& log_expert_weights() const {
    return log_weights_;
  }

 private:
  ForecasterParams params_;
  std::vector<double> log_meta_;                 // one weight per sub-forecaster
  std::vector<std::vector<double>> log_weights_;  // per sub-forecaster, per action
  int step_ = 1;
};

// Inverse-CDF sample from a probability vector, scanning indices in
// ascending order with one uniform draw. A draw landing exactly on a
// cumulative boundary selects the next index.
int sample_index(std::span<const double> probabilities, RandomStream& rng);

// Deterministic core of the above given the uniform draw u in [0, 1).
int sample_index(std::span<const double> probabilities, double u);

}  // namespace osgcoord
