#pragma once

#include <cstdint>
#include <random>

#include "solvloop/group.hpp"
#include "solvloop/subgroups.hpp"

namespace solvloop {

/// Seeded generator whose output is identical across platforms: mt19937_64
/// is fully specified and doubles are taken from the top 53 bits directly,
/// without std::uniform_real_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform in [lo, hi] in magnitude with a random sign.
  double signed_magnitude(double lo, double hi) {
    const double m = uniform(lo, hi);
    return (engine_() & 1u) ? m : -m;
  }

  GroupElement element(double half_width) {
    const double x1 = uniform(-half_width, half_width);
    const double x2 = uniform(-half_width, half_width);
    const double x3 = uniform(-half_width, half_width);
    const double x4 = uniform(-half_width, half_width);
    return {x1, x2, x3, x4};
  }
  LoopPoint point(double half_width) {
    const double x = uniform(-half_width, half_width);
    const double y = uniform(-half_width, half_width);
    const double z = uniform(-half_width, half_width);
    return {x, y, z};
  }

 private:
  std::mt19937_64 engine_;
};

struct SamplerConfig {
  std::size_t n = 1000;
  double half_width = 5.0;
  std::uint64_t seed = 1;
};

}  // namespace solvloop
