#pragma once

#include <cstdint>
#include <random>

namespace lawkit {

/// Seeded generator used by every sampling routine. One instance per run or
/// shard keeps verdicts reproducible.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  bool coin(double p = 0.5) { return uniform() < p; }

  std::uint64_t next_seed() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace lawkit
