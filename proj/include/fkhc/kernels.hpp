#pragma once

#include <cstddef>
#include <cstdint>

#include "fkhc/rng.hpp"

namespace fkhc::kernels {

// Data-parallel inner loops used by the hot paths: batch letter generation,
// sparse-table min layers, and moment accumulation. Scalar reference
// kernels define the exact contract (including summation order); the AVX2
// variants must match them bit for bit and are selected at runtime.

struct Moments {
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
};

using FillLettersFn = void (*)(uint64_t seed, int64_t t0, size_t n,
                               const LetterThresholds& th, uint8_t* out);
using MinLayerI32Fn = void (*)(const int32_t* in, size_t n, size_t off, int32_t* out);
using MinLayerF64Fn = void (*)(const double* in, size_t n, size_t off, double* out);
using MomentsFn = Moments (*)(const double* x, const double* y, size_t n);

struct Dispatch {
  FillLettersFn fill_letters;
  MinLayerI32Fn min_layer_i32;
  MinLayerF64Fn min_layer_f64;
  MomentsFn moments;
  const char* name;
};

// Active implementation (AVX2 when the CPU supports it and
// FKHC_FORCE_SCALAR is not set in the environment).
const Dispatch& active();
const Dispatch& scalar();
const Dispatch& avx2();  // null pointers when unavailable
bool avx2_available();

inline void fill_letters(uint64_t seed, int64_t t0, size_t n,
                         const LetterThresholds& th, uint8_t* out) {
  active().fill_letters(seed, t0, n, th, out);
}
inline void min_layer(const int32_t* in, size_t n, size_t off, int32_t* out) {
  active().min_layer_i32(in, n, off, out);
}
inline void min_layer(const double* in, size_t n, size_t off, double* out) {
  active().min_layer_f64(in, n, off, out);
}
inline Moments moments(const double* x, const double* y, size_t n) {
  return active().moments(x, y, n);
}

}  // namespace fkhc::kernels
