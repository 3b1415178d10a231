#include "osgcoord/forecaster.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "osgcoord/numeric.hpp"

namespace osgcoord {

int ceil_log2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("ceil_log2(0)");
  int j = 0;
  std::uint64_t p = 1;
  while (p < n) {
    p <<= 1;
    ++j;
  }
  return j;
}

ForecasterParams ForecasterParams::make(int total_steps, int action_count) {
  if (total_steps < 1) throw std::invalid_argument("total_steps must be >= 1");
  if (action_count < 1) throw std::invalid_argument("action_count must be >= 1");
  ForecasterParams p;
  p.total_steps = total_steps;
  p.action_count = action_count;
  // ceil(log2 T) is 0 at T = 1; clamp so one sub-forecaster always exists.
  p.expert_count = std::max(1, ceil_log2(static_cast<std::uint64_t>(total_steps)));
  p.meta_rate = std::sqrt(std::log(static_cast<double>(p.expert_count)) /
                          static_cast<double>(total_steps));
  p.share = 1.0 / static_cast<double>(total_steps);
  const double log_vt = std::log(static_cast<double>(action_count) *
                                 static_cast<double>(total_steps));
  p.expert_rates.resize(p.expert_count);
  for (int j = 0; j < p.expert_count; ++j) {
    p.expert_rates[j] = std::sqrt(log_vt / std::pow(2.0, j));
  }
  return p;
}

Forecaster::Forecaster(int total_steps, int action_count)
    : params_(ForecasterParams::make(total_steps, action_count)),
      log_meta_(params_.expert_count, 0.0),
      log_weights_(params_.expert_count,
                   std::vector<double>(params_.action_count, 0.0)) {}

std::vector<double> Forecaster::distribution() const {
  const std::vector<double> meta = normalize_log(log_meta_);
  std::vector<double> p(params_.action_count, 0.0);
  for (int j = 0; j < params_.expert_count; ++j) {
    const std::vector<double> pj = normalize_log(log_weights_[j]);
    for (int i = 0; i < params_.action_count; ++i) {
      p[i] += meta[j] * pj[i];
    }
  }
  return p;
}

void Forecaster::observe(std::span<const double> rewards) {
  const int n = params_.action_count;
  if (static_cast<int>(rewards.size()) != n) {
    throw std::invalid_argument("reward vector length " +
                                std::to_string(rewards.size()) + ", expected " +
                                std::to_string(n));
  }
  for (double r : rewards) {
    if (!std::isfinite(r)) throw std::invalid_argument("non-finite reward");
  }
  if (step_ > params_.total_steps) {
    throw std::logic_error("forecaster horizon exhausted");
  }

  const double share = params_.share;
  const bool full_share = share >= 1.0;  // T = 1
  const double log_share = std::log(share);
  const double log_keep = full_share ? -std::numeric_limits<double>::infinity()
                                     : std::log1p(-share);
  const double log_n = std::log(static_cast<double>(n));

  std::vector<double> boosted(n);
  for (int j = 0; j < params_.expert_count; ++j) {
    std::vector<double>& row = log_weights_[j];

    // Meta-weight update uses this sub-forecaster's pre-update distribution.
    const std::vector<double> pj = normalize_log(row);
    double expected = 0.0;
    for (int i = 0; i < n; ++i) expected += rewards[i] * pj[i];
    log_meta_[j] += params_.meta_rate * expected;

    const double rate = params_.expert_rates[j];
    for (int i = 0; i < n; ++i) boosted[i] = row[i] + rate * rewards[i];
    const double pool = log_sum_exp(boosted);  // log of the boosted total

    // Fixed-share mix: a `share` fraction of the pooled weight is spread
    // uniformly, the rest stays with each action.
    const double mixed = log_share + pool - log_n;
    double row_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      row[i] = full_share ? pool - log_n : log_add_exp(mixed, log_keep + boosted[i]);
      row_max = std::max(row_max, row[i]);
    }
    for (int i = 0; i < n; ++i) row[i] -= row_max;
  }

  double meta_max = -std::numeric_limits<double>::infinity();
  for (double z : log_meta_) meta_max = std::max(meta_max, z);
  for (double& z : log_meta_) z -= meta_max;

  ++step_;
}

std::uint64_t Forecaster::ops_per_observe() const {
  // Estimate: per sub-forecaster, ~12 scalar ops per action plus a handful
  // of row-level ops.
  return static_cast<std::uint64_t>(params_.expert_count) *
         (12u * static_cast<std::uint64_t>(params_.action_count) + 6u);
}

int sample_index(std::span<const double> probabilities, RandomStream& rng) {
  return sample_index(probabilities, rng.uniform());
}

int sample_index(std::span<const double> probabilities, double u) {
  if (probabilities.empty()) throw std::invalid_argument("empty distribution");
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (u < cumulative) return static_cast<int>(i);
  }
  // Rounding can leave the final cumulative a hair below 1; fall back to the
  // last index with positive mass.
  for (std::size_t i = probabilities.size(); i-- > 0;) {
    if (probabilities[i] > 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(probabilities.size()) - 1;
}

}  // namespace osgcoord
