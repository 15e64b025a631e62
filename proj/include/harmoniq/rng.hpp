#pragma once

#include <cstdint>

namespace harmoniq {

/// Counter-based RNG. Each (seed, stream) pair yields an independent
/// deterministic substream, so Monte Carlo trials can be farmed out to
/// threads in any order without changing the result.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) {
    state_ = mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL));
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// +1 or -1 with equal probability.
  int next_sign() { return (next_u64() & 1ULL) ? 1 : -1; }

  /// Geometric: number of Bernoulli(p) attempts until first success.
  int next_geometric(double p) {
    int attempts = 1;
    while (next_double() >= p) ++attempts;
    return attempts;
  }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  uint64_t state_;
};

}  // namespace harmoniq
