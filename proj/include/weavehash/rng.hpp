#pragma once

#include <cmath>
#include <cstdint>

#include "weavehash/su2.hpp"

namespace weavehash {

// splitmix64; used directly for all sampling so results do not depend on
// the standard library's distribution implementations.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() {  // [0, 1)
    return double(next() >> 11) * 0x1.0p-53;
  }

  double normal() {  // Box-Muller, one value per call pair kept simple
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
};

// Independent per-trial stream: mixes the trial index into the seed so
// trials can be reproduced individually.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  Rng mixer(seed ^ (0x632be59bd9b4e019ULL * (trial + 1)));
  return Rng(mixer.next());
}

// Haar-uniform SU(2) element (uniform unit quaternion, Shoemake's map).
inline Quat haar_quat(Rng& rng) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double u3 = rng.uniform();
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  return Quat{a * std::sin(2.0 * M_PI * u2), a * std::cos(2.0 * M_PI * u2),
              b * std::sin(2.0 * M_PI * u3), b * std::cos(2.0 * M_PI * u3)};
}

inline Gate haar_gate(Rng& rng) { return Gate::from_quat(haar_quat(rng)); }

}  // namespace weavehash
