#include <cstdlib>

#include "fkhc/kernels.hpp"

namespace fkhc::kernels {

bool avx2_available() {
#if defined(FKHC_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

#if !defined(FKHC_HAVE_AVX2) || !(defined(__x86_64__) || defined(_M_X64))
const Dispatch& avx2() {
  static const Dispatch d{nullptr, nullptr, nullptr, nullptr, "unavailable"};
  return d;
}
#endif

const Dispatch& active() {
  static const Dispatch& chosen = []() -> const Dispatch& {
    if (std::getenv("FKHC_FORCE_SCALAR") != nullptr) return scalar();
    if (avx2_available()) return avx2();
    return scalar();
  }();
  return chosen;
}

}  // namespace fkhc::kernels
