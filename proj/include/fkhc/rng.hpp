#pragma once

#include <cmath>
#include <cstdint>

#include "fkhc/letters.hpp"

namespace fkhc {

// Counter-based generation: every variate is a pure function of
// (seed, stream, counter), so two-sided words can grow in either
// direction without replay and samples can run on any worker.

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ull;

constexpr uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// Two finalizer rounds with the key folded in twice.
constexpr uint64_t hash_at(uint64_t seed, uint64_t counter) {
  return mix64(mix64(counter * kGolden ^ seed) + seed);
}

// Derived stream/sample seeds (also used for per-sample worker seeds).
constexpr uint64_t derive_seed(uint64_t master, uint64_t index) {
  return hash_at(master ^ 0x5851f42d4c957f2dull, index);
}

inline double uniform01(uint64_t seed, uint64_t counter) {
  return static_cast<double>(hash_at(seed, counter) >> 11) * 0x1.0p-53;
}

// Box-Muller; two gaussians per counter pair, fully deterministic in IEEE.
inline void gaussian_pair(uint64_t seed, uint64_t counter, double* g0, double* g1) {
  double u1 = uniform01(seed, 2 * counter);
  double u2 = uniform01(seed, 2 * counter + 1);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  *g0 = r * std::cos(6.283185307179586477 * u2);
  *g1 = r * std::sin(6.283185307179586477 * u2);
}

// Cumulative 64-bit thresholds for theta_p over the letter order a,b,A,B,F.
// At p=0 the B block ends exactly at 2^64, which is why the last boundary
// is kept as "last value belonging to B" rather than a one-past-the-end.
struct LetterThresholds {
  uint64_t up_to_a, up_to_b, up_to_A, last_B;

  static LetterThresholds from_p(double p) {
    if (!(p >= 0.0 && p < 1.0))
      throw std::invalid_argument("p must lie in [0,1)");
    LetterThresholds t;
    const uint64_t quarter = 1ull << 62;
    const uint64_t w_order =
        static_cast<uint64_t>((1.0 - p) / 4.0 * 0x1.0p64);
    t.up_to_a = quarter;
    t.up_to_b = 2 * quarter;
    t.up_to_A = t.up_to_b + w_order;
    t.last_B = t.up_to_A - 1 + w_order;
    return t;
  }

  Letter classify(uint64_t u) const {
    if (u < up_to_a) return Letter::a;
    if (u < up_to_b) return Letter::b;
    if (u < up_to_A) return Letter::A;
    if (u <= last_B) return Letter::B;
    return Letter::F;
  }
};

// Letter at integer time t (two-sided; t is cast to u64 two's-complement).
inline Letter sample_letter(uint64_t seed, int64_t t, const LetterThresholds& th) {
  return th.classify(hash_at(seed, static_cast<uint64_t>(t)));
}

inline Letter sample_letter(uint64_t seed, int64_t t, double p) {
  return sample_letter(seed, t, LetterThresholds::from_p(p));
}

}  // namespace fkhc
