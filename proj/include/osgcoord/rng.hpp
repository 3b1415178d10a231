#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace osgcoord {

// Deterministic random stream. mt19937_64 is fully specified by the
// standard and the double extraction below is explicit, so a seeded run
// reproduces bit-for-bit.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Box-Muller without pair caching; consumes two uniforms per call.
  double normal(double mean, double stddev) {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * mag * std::cos(kTwoPi * u2);
  }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable sub-stream derivation from a master seed. Streams for distinct
// (domain, index) pairs are independent, so adding or removing one never
// perturbs the draws of another.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t domain,
                                 std::uint64_t index) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ domain);
  s = splitmix64(s ^ index);
  return s;
}

namespace stream_domain {
inline constexpr std::uint64_t kAgent = 0x41;
inline constexpr std::uint64_t kTarget = 0x54;
inline constexpr std::uint64_t kPolicy = 0x50;
}  // namespace stream_domain

}  // namespace osgcoord
