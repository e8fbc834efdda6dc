#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "fkhc/kernels.hpp"

namespace fkhc {

// Sparse table for O(1) range minimum over a frozen array.
template <class T>
class MinSparseTable {
 public:
  MinSparseTable() = default;
  explicit MinSparseTable(std::span<const T> data) { build(data); }

  void build(std::span<const T> data) {
    n_ = data.size();
    layers_.clear();
    if (n_ == 0) return;
    layers_.emplace_back(data.begin(), data.end());
    for (size_t len = 2; len <= n_; len *= 2) {
      const auto& prev = layers_.back();
      std::vector<T> next(n_ - len + 1);
      if constexpr (std::is_same_v<T, int32_t> || std::is_same_v<T, double>) {
        kernels::min_layer(prev.data(), next.size(), len / 2, next.data());
      } else {
        for (size_t i = 0; i < next.size(); ++i)
          next[i] = std::min(prev[i], prev[i + len / 2]);
      }
      layers_.push_back(std::move(next));
    }
  }

  // Min over the inclusive index range [l, r].
  T range_min(size_t l, size_t r) const {
    const size_t k = static_cast<size_t>(std::bit_width(r - l + 1)) - 1;
    const T a = layers_[k][l];
    const T b = layers_[k][r + 1 - (size_t{1} << k)];
    return b < a ? b : a;
  }

  size_t size() const { return n_; }

 private:
  size_t n_ = 0;
  std::vector<std::vector<T>> layers_;
};

}  // namespace fkhc
