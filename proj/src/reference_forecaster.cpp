#include "osgcoord/reference_forecaster.hpp"

#include <cmath>
#include <stdexcept>

#include "osgcoord/forecaster.hpp"
#include "osgcoord/rng.hpp"

namespace osgcoord::reference {

NaiveForecaster::NaiveForecaster(int total_steps, int action_count)
    : total_steps_(total_steps), action_count_(action_count) {
  if (total_steps < 1 || action_count < 1) {
    throw std::invalid_argument("NaiveForecaster: bad arguments");
  }
  int j = 0;
  for (int p = 1; p < total_steps; p *= 2) ++j;  // ceil(log2 T)
  expert_count_ = j < 1 ? 1 : j;
  meta_rate_ = std::sqrt(std::log(static_cast<double>(expert_count_)) /
                         total_steps_);
  share_ = 1.0 / total_steps_;
  double denom = 1.0;
  for (int k = 0; k < expert_count_; ++k) {
    rates_.push_back(std::sqrt(
        std::log(static_cast<double>(action_count_) * total_steps_) / denom));
    denom *= 2.0;
  }
  meta_weights_.assign(expert_count_, 1.0);
  weights_.assign(expert_count_, std::vector<double>(action_count_, 1.0));
}

std::vector<double> NaiveForecaster::distribution() const {
  double meta_total = 0.0;
  for (double z : meta_weights_) meta_total += z;
  std::vector<double> p(action_count_, 0.0);
  for (int j = 0; j < expert_count_; ++j) {
    double row_total = 0.0;
    for (double w : weights_[j]) row_total += w;
    for (int i = 0; i < action_count_; ++i) {
      p[i] += (meta_weights_[j] / meta_total) * (weights_[j][i] / row_total);
    }
  }
  return p;
}

void NaiveForecaster::observe(const std::vector<double>& rewards) {
  if (static_cast<int>(rewards.size()) != action_count_) {
    throw std::invalid_argument("NaiveForecaster: reward length mismatch");
  }
  for (int j = 0; j < expert_count_; ++j) {
    double row_total = 0.0;
    for (double w : weights_[j]) row_total += w;

    double expected = 0.0;
    for (int i = 0; i < action_count_; ++i) {
      expected += rewards[i] * (weights_[j][i] / row_total);
    }

    std::vector<double> boosted(action_count_);
    double pool = 0.0;
    for (int i = 0; i < action_count_; ++i) {
      boosted[i] = weights_[j][i] * std::exp(rates_[j] * rewards[i]);
      pool += boosted[i];
    }
    for (int i = 0; i < action_count_; ++i) {
      weights_[j][i] = share_ * pool / action_count_ + (1.0 - share_) * boosted[i];
    }
    meta_weights_[j] *= std::exp(meta_rate_ * expected);
  }
}

double max_distribution_deviation(int total_steps, int action_count,
                                  int stream_count, std::uint64_t seed) {
  double worst = 0.0;
  for (int s = 0; s < stream_count; ++s) {
    RandomStream rng(derive_seed(seed, 0x6c696e, static_cast<std::uint64_t>(s)));
    Forecaster fast(total_steps, action_count);
    NaiveForecaster naive(total_steps, action_count);
    std::vector<double> rewards(action_count);
    for (int t = 1; t <= total_steps; ++t) {
      const std::vector<double> pf = fast.distribution();
      const std::vector<double> pn = naive.distribution();
      for (int i = 0; i < action_count; ++i) {
        worst = std::max(worst, std::abs(pf[i] - pn[i]));
      }
      for (double& r : rewards) r = rng.uniform();
      fast.observe(rewards);
      naive.observe(rewards);
    }
    // Compare the post-horizon distributions as well.
    const std::vector<double> pf = fast.distribution();
    const std::vector<double> pn = naive.distribution();
    for (int i = 0; i < action_count; ++i) {
      worst = std::max(worst, std::abs(pf[i] - pn[i]));
    }
  }
  return worst;
}

}  // namespace osgcoord::reference
