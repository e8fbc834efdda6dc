#include "fkhc/kernels.hpp"

// Scalar reference kernels. These define the contract: moment sums are
// accumulated in four interleaved lanes and folded lane0+lane2, lane1+lane3,
// then (02)+(13), which is the same association the vector variants use.

namespace fkhc::kernels {

namespace {

void fill_letters_scalar(uint64_t seed, int64_t t0, size_t n,
                         const LetterThresholds& th, uint8_t* out) {
  for (size_t i = 0; i < n; ++i) {
    const uint64_t u = hash_at(seed, static_cast<uint64_t>(t0 + static_cast<int64_t>(i)));
    out[i] = static_cast<uint8_t>(th.classify(u));
  }
}

template <class T>
void min_layer_t(const T* in, size_t n, size_t off, T* out) {
  for (size_t i = 0; i < n; ++i) {
    const T a = in[i];
    const T b = in[i + off];
    out[i] = b < a ? b : a;
  }
}

Moments moments_scalar(const double* x, const double* y, size_t n) {
  double sx[4] = {0, 0, 0, 0}, sy[4] = {0, 0, 0, 0};
  double sxx[4] = {0, 0, 0, 0}, syy[4] = {0, 0, 0, 0}, sxy[4] = {0, 0, 0, 0};
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double xv = x[i + l], yv = y[i + l];
      sx[l] += xv;
      sy[l] += yv;
      sxx[l] += xv * xv;
      syy[l] += yv * yv;
      sxy[l] += xv * yv;
    }
  }
  Moments m;
  m.sx = (sx[0] + sx[2]) + (sx[1] + sx[3]);
  m.sy = (sy[0] + sy[2]) + (sy[1] + sy[3]);
  m.sxx = (sxx[0] + sxx[2]) + (sxx[1] + sxx[3]);
  m.syy = (syy[0] + syy[2]) + (syy[1] + syy[3]);
  m.sxy = (sxy[0] + sxy[2]) + (sxy[1] + sxy[3]);
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

const Dispatch& scalar() {
  static const Dispatch d{fill_letters_scalar, min_layer_t<int32_t>,
                          min_layer_t<double>, moments_scalar, "scalar"};
  return d;
}

}  // namespace fkhc::kernels
