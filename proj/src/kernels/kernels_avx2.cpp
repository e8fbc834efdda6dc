#include "fkhc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace fkhc::kernels {

namespace {

// AVX2 has no 64-bit low multiply; assemble it from 32x32->64 pieces.
inline __m256i mullo64(__m256i a, __m256i b) {
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i b_hi = _mm256_srli_epi64(b, 32);
  const __m256i lolo = _mm256_mul_epu32(a, b);
  const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a, b_hi),
                                         _mm256_mul_epu32(a_hi, b));
  return _mm256_add_epi64(lolo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64_v(__m256i z) {
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
  z = mullo64(z, _mm256_set1_epi64x(static_cast<int64_t>(0xbf58476d1ce4e5b9ull)));
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
  z = mullo64(z, _mm256_set1_epi64x(static_cast<int64_t>(0x94d049bb133111ebull)));
  z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
  return z;
}

inline __m256i hash_at_v(__m256i seed, __m256i counter) {
  const __m256i k = _mm256_set1_epi64x(static_cast<int64_t>(kGolden));
  __m256i z = _mm256_xor_si256(mullo64(counter, k), seed);
  z = _mm256_add_epi64(mix64_v(z), seed);
  return mix64_v(z);
}

void fill_letters_avx2(uint64_t seed, int64_t t0, size_t n,
                       const LetterThresholds& th, uint8_t* out) {
  const __m256i vseed = _mm256_set1_epi64x(static_cast<int64_t>(seed));
  const __m256i sign = _mm256_set1_epi64x(static_cast<int64_t>(0x8000000000000000ull));
  // u >= thr  <=>  u > thr-1 as signed after the sign flip
  const __m256i t1 = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<int64_t>(th.up_to_a - 1)), sign);
  const __m256i t2 = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<int64_t>(th.up_to_b - 1)), sign);
  const __m256i t3 = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<int64_t>(th.up_to_A - 1)), sign);
  const __m256i t4 = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<int64_t>(th.last_B)), sign);

  size_t i = 0;
  alignas(32) int64_t lane[4];
  for (; i + 4 <= n; i += 4) {
    const int64_t t = t0 + static_cast<int64_t>(i);
    const __m256i counter = _mm256_add_epi64(_mm256_set1_epi64x(t),
                                             _mm256_set_epi64x(3, 2, 1, 0));
    const __m256i u = hash_at_v(vseed, counter);
    const __m256i uf = _mm256_xor_si256(u, sign);
    __m256i cls = _mm256_setzero_si256();
    cls = _mm256_sub_epi64(cls, _mm256_cmpgt_epi64(uf, t1));
    cls = _mm256_sub_epi64(cls, _mm256_cmpgt_epi64(uf, t2));
    cls = _mm256_sub_epi64(cls, _mm256_cmpgt_epi64(uf, t3));
    cls = _mm256_sub_epi64(cls, _mm256_cmpgt_epi64(uf, t4));
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), cls);
    out[i + 0] = static_cast<uint8_t>(lane[0]);
    out[i + 1] = static_cast<uint8_t>(lane[1]);
    out[i + 2] = static_cast<uint8_t>(lane[2]);
    out[i + 3] = static_cast<uint8_t>(lane[3]);
  }
  for (; i < n; ++i) {
    const uint64_t u = hash_at(seed, static_cast<uint64_t>(t0 + static_cast<int64_t>(i)));
    out[i] = static_cast<uint8_t>(th.classify(u));
  }
}

void min_layer_i32_avx2(const int32_t* in, size_t n, size_t off, int32_t* out) {
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + i + off));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_min_epi32(a, b));
  }
  for (; i < n; ++i) {
    const int32_t a = in[i], b = in[i + off];
    out[i] = b < a ? b : a;
  }
}

void min_layer_f64_avx2(const double* in, size_t n, size_t off, double* out) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(in + i);
    const __m256d b = _mm256_loadu_pd(in + i + off);
    _mm256_storeu_pd(out + i, _mm256_min_pd(a, b));
  }
  for (; i < n; ++i) {
    const double a = in[i], b = in[i + off];
    out[i] = b < a ? b : a;
  }
}

Moments moments_avx2(const double* x, const double* y, size_t n) {
  __m256d sx = _mm256_setzero_pd(), sy = _mm256_setzero_pd();
  __m256d sxx = _mm256_setzero_pd(), syy = _mm256_setzero_pd(), sxy = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    sx = _mm256_add_pd(sx, xv);
    sy = _mm256_add_pd(sy, yv);
    sxx = _mm256_add_pd(sxx, _mm256_mul_pd(xv, xv));
    syy = _mm256_add_pd(syy, _mm256_mul_pd(yv, yv));
    sxy = _mm256_add_pd(sxy, _mm256_mul_pd(xv, yv));
  }
  alignas(32) double l[4];
  Moments m;
  // fold (0+2)+(1+3): identical association to the scalar reference
  _mm256_store_pd(l, sx);
  m.sx = (l[0] + l[2]) + (l[1] + l[3]);
  _mm256_store_pd(l, sy);
  m.sy = (l[0] + l[2]) + (l[1] + l[3]);
  _mm256_store_pd(l, sxx);
  m.sxx = (l[0] + l[2]) + (l[1] + l[3]);
  _mm256_store_pd(l, syy);
  m.syy = (l[0] + l[2]) + (l[1] + l[3]);
  _mm256_store_pd(l, sxy);
  m.sxy = (l[0] + l[2]) + (l[1] + l[3]);
  for (; i < n; ++i) {
    const double xv = x[i], yv = y[i];
    m.sx += xv;
    m.sy += yv;
    m.sxx += xv * xv;
    m.syy += yv * yv;
    m.sxy += xv * yv;
  }
  return m;
}

}  // namespace

const Dispatch& avx2() {
  static const Dispatch d{fill_letters_avx2, min_layer_i32_avx2,
                          min_layer_f64_avx2, moments_avx2, "avx2"};
  return d;
}

}  // namespace fkhc::kernels

#endif  // x86_64
