// Deterministic random streams for the simulator. Every consumer derives
// its own stream from (seed, lane), so trial-level parallelism cannot
// change the numbers.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace szcz {

// splitmix64 finalizer
inline constexpr std::uint64_t avalanche(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Rng {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    return avalanche(state);
  }

  // uniform in (0, 1]; never 0, so it is safe under log
  double next_unit() { return double((next() >> 11) + 1) * 0x1.0p-53; }

  // CN(0, variance): one Box-Muller pair per draw, real then imaginary
  std::complex<double> next_cgauss(double variance) {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-variance * std::log(u1));
    const double phi = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }
};

inline Rng keyed_rng(std::uint64_t seed, std::uint64_t lane) {
  return Rng{avalanche(seed + 0x9E3779B97F4A7C15ULL * (lane + 1))};
}

}  // namespace szcz
