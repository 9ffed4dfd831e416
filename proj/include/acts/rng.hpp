// Counter-based deterministic RNG. Every consumer derives an independent
// stream from (seed, stream) so any frame or trial is reproducible on its
// own, independent of evaluation order.
#pragma once

#include <cmath>
#include <cstdint>

namespace acts {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  // Keyed stream: state derived by mixing the stream id into the seed.
  SplitMix64(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(seed ^ mix64(stream ^ 0x5851f42d4c957f2dull))) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) via 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform double in [0, 1).
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (two uniforms per call, no caching,
  // so the stream position stays easy to reason about).
  double normal();

 private:
  std::uint64_t state_;
};

inline double SplitMix64::normal() {
  // Avoid log(0): shift u1 away from zero by half an ulp step.
  double u1 = (double(next() >> 11) + 0.5) * 0x1.0p-53;
  double u2 = uniform();
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace acts
