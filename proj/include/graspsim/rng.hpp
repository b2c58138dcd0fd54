#pragma once

#include <cstdint>
#include <random>

namespace graspsim {

/// splitmix64 step; used to derive independent per-trial seeds.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

/// Gaussian draw that is an exact zero (and consumes no entropy) when the
/// sigma is zero, so noiseless configs stay bit-deterministic.
inline double gauss(Rng& rng, double sigma) {
  if (sigma <= 0.0) {
    return 0.0;
  }
  std::normal_distribution<double> dist(0.0, sigma);
  return dist(rng);
}

inline double uniform(Rng& rng, double lo, double hi) {
  if (hi <= lo) {
    return lo;
  }
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

inline bool chance(Rng& rng, double probability) {
  if (probability <= 0.0) {
    return false;
  }
  if (probability >= 1.0) {
    return true;
  }
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(rng) < probability;
}

}  // namespace graspsim
