#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "fkhc/kernels.hpp"

using namespace fkhc;

namespace {

std::vector<double> random_doubles(uint64_t seed, size_t n, double scale) {
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = scale * (uniform01(seed, i) - 0.5);
  return v;
}

}  // namespace

TEST_CASE("letter batches match single-shot sampling") {
  const auto th = LetterThresholds::from_p(0.6);
  std::vector<uint8_t> buf(1000);
  kernels::scalar().fill_letters(42, -500, buf.size(), th, buf.data());
  for (size_t i = 0; i < buf.size(); ++i) {
    const int64_t t = -500 + static_cast<int64_t>(i);
    CHECK(buf[i] == static_cast<uint8_t>(sample_letter(42, t, th)));
  }
}

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
  if (!kernels::avx2_available()) return;
  const auto& s = kernels::scalar();
  const auto& v = kernels::avx2();

  for (uint64_t seed : {1ull, 99ull, 0xdeadbeefull}) {
    const auto th = LetterThresholds::from_p(0.37);
    for (size_t n : {0ul, 1ul, 3ul, 4ul, 1023ul}) {
      std::vector<uint8_t> a(n + 1, 0xee), b(n + 1, 0xee);
      s.fill_letters(seed, -37, n, th, a.data());
      v.fill_letters(seed, -37, n, th, b.data());
      CHECK(std::memcmp(a.data(), b.data(), n + 1) == 0);
    }
  }

  std::vector<int32_t> xi(517);
  for (size_t i = 0; i < xi.size(); ++i)
    xi[i] = static_cast<int32_t>(hash_at(7, i) % 1000) - 500;
  for (size_t off : {1ul, 2ul, 64ul}) {
    std::vector<int32_t> a(xi.size() - off), b(xi.size() - off);
    s.min_layer_i32(xi.data(), a.size(), off, a.data());
    v.min_layer_i32(xi.data(), b.size(), off, b.data());
    CHECK(a == b);
  }

  const auto xd = random_doubles(3, 513, 10.0);
  for (size_t off : {1ul, 8ul}) {
    std::vector<double> a(xd.size() - off), b(xd.size() - off);
    s.min_layer_f64(xd.data(), a.size(), off, a.data());
    v.min_layer_f64(xd.data(), b.size(), off, b.data());
    CHECK(a == b);
  }

  const auto y = random_doubles(4, 513, 3.0);
  for (size_t n : {0ul, 1ul, 5ul, 512ul, 513ul}) {
    const auto ms = s.moments(xd.data(), y.data(), n);
    const auto mv = v.moments(xd.data(), y.data(), n);
    CHECK(ms.sx == mv.sx);
    CHECK(ms.sy == mv.sy);
    CHECK(ms.sxx == mv.sxx);
    CHECK(ms.syy == mv.syy);
    CHECK(ms.sxy == mv.sxy);
  }
}

TEST_CASE("theta_p frequencies over 1e6 draws sit within 3 sigma") {
  const double p = 0.6;
  const auto th = LetterThresholds::from_p(p);
  const size_t n = 1'000'000;
  std::vector<uint8_t> buf(n);
  kernels::fill_letters(2024, 0, n, th, buf.data());
  double counts[5] = {0, 0, 0, 0, 0};
  for (uint8_t x : buf) counts[x] += 1;
  const double probs[5] = {0.25, 0.25, (1 - p) / 4, (1 - p) / 4, p / 2};
  for (int k = 0; k < 5; ++k) {
    const double mean = static_cast<double>(n) * probs[k];
    const double sd = std::sqrt(static_cast<double>(n) * probs[k] * (1 - probs[k]));
    CHECK(std::abs(counts[k] - mean) < 3 * sd);
  }
}

TEST_CASE("p=0 disables flexible orders") {
  const auto th = LetterThresholds::from_p(0.0);
  for (int64_t t = -1000; t < 1000; ++t)
    CHECK(sample_letter(5, t, th) != Letter::F);
}
