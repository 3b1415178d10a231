#pragma once

#include <cstdint>
#include <vector>

namespace osgcoord::reference {

// Naive linear-domain transcription of the multi-rate fixed-share
// forecaster recursion. Verification oracle only: it shares no code with
// osgcoord::Forecaster and overflows for long horizons, but for short ones
// it is a direct reading of the update equations. Used by the `check`
// command and the equivalence test batteries.
class NaiveForecaster {
 public:
  NaiveForecaster(int total_steps, int action_count);

  std::vector<double> distribution() const;
  void observe(const std::vector<double>& rewards);

  int expert_count() const { return expert_count_; }

 private:
  int total_steps_;
  int action_count_;
  int expert_count_;
  double meta_rate_;
  double share_;
  std::vector<double> rates_;
  std::vector<double> meta_weights_;
  std::vector<std::vector<double>> weights_;
};

// Largest per-entry deviation between the log-domain forecaster and the
// naive transcription over `stream_count` random reward streams in [0, 1].
double max_distribution_deviation(int total_steps, int action_count,
                                  int stream_count, std::uint64_t seed);

}  // namespace osgcoord::reference
