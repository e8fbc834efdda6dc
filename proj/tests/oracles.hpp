#pragma once

// Test-only oracles, kept independent of the implementation paths they
// check: naive rewriting for the reduction engine, Floyd-Warshall for BFS
// distances, and exhaustive-search GHP for the bound estimators.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "fkhc/letters.hpp"
#include "fkhc/mms.hpp"
#include "fkhc/word.hpp"

namespace fkhc::oracle {

// One rewriting step at the leftmost applicable position: cancellation of
// aA / bB / aF / bF first, otherwise commutation aB -> Ba / bA -> Ab.
// Returns false at a fixed point.
inline bool rewrite_step(std::vector<Letter>& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    const Letter x = w[i], y = w[i + 1];
    const bool cancel = (x == Letter::a && (y == Letter::A || y == Letter::F)) ||
                        (x == Letter::b && (y == Letter::B || y == Letter::F));
    if (cancel) {
      w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
      return true;
    }
  }
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    const Letter x = w[i], y = w[i + 1];
    if ((x == Letter::a && y == Letter::B) || (x == Letter::b && y == Letter::A)) {
      std::swap(w[i], w[i + 1]);
      return true;
    }
  }
  return false;
}

inline ReducedWord naive_reduce(std::vector<Letter> w) {
  while (rewrite_step(w)) {
  }
  ReducedWord out;
  for (Letter x : w)
    (is_order(x) ? out.orders : out.burgers).push_back(x);
  return out;
}

// Every single applicable rewrite, for local-confluence checks.
inline std::vector<std::vector<Letter>> all_single_rewrites(const std::vector<Letter>& w) {
  std::vector<std::vector<Letter>> out;
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    const Letter x = w[i], y = w[i + 1];
    const bool cancel = (x == Letter::a && (y == Letter::A || y == Letter::F)) ||
                        (x == Letter::b && (y == Letter::B || y == Letter::F));
    if (cancel) {
      std::vector<Letter> v(w);
      v.erase(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i) + 2);
      out.push_back(std::move(v));
    }
    const bool commute = (x == Letter::a && y == Letter::B) ||
                         (x == Letter::b && y == Letter::A) ||
                         (x == Letter::B && y == Letter::a) ||
                         (x == Letter::A && y == Letter::b);
    if (commute) {
      std::vector<Letter> v(w);
      std::swap(v[i], v[i + 1]);
      out.push_back(std::move(v));
    }
  }
  return out;
}

inline std::vector<Letter> word_from_index(int64_t idx, int len) {
  std::vector<Letter> w(static_cast<size_t>(len));
  for (int i = 0; i < len; ++i) {
    w[static_cast<size_t>(i)] = static_cast<Letter>(idx % 5);
    idx /= 5;
  }
  return w;
}

// All-pairs shortest paths over an explicit edge list.
inline std::vector<std::vector<int32_t>> floyd_warshall(
    int n, const std::vector<std::pair<int32_t, int32_t>>& edges) {
  constexpr int32_t inf = std::numeric_limits<int32_t>::max() / 4;
  std::vector<std::vector<int32_t>> d(static_cast<size_t>(n),
                                      std::vector<int32_t>(static_cast<size_t>(n), inf));
  for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0;
  for (auto [u, v] : edges) {
    d[static_cast<size_t>(u)][static_cast<size_t>(v)] = std::min(d[static_cast<size_t>(u)][static_cast<size_t>(v)], 1);
    d[static_cast<size_t>(v)][static_cast<size_t>(u)] = std::min(d[static_cast<size_t>(v)][static_cast<size_t>(u)], 1);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            std::min(d[static_cast<size_t>(i)][static_cast<size_t>(j)],
                     d[static_cast<size_t>(i)][static_cast<size_t>(k)] +
                         d[static_cast<size_t>(k)][static_cast<size_t>(j)]);
  return d;
}

// Exact GHP for tiny spaces by exhausting all correspondences (subsets of
// the pair grid covering both sides and containing the root pair), with
// the off-R coupling mass minimized exactly for each.
inline double exact_ghp_small(const MetricMeasureSpace& x, const MetricMeasureSpace& y) {
  const int cells = x.n * y.n;
  double best = std::numeric_limits<double>::infinity();
  for (uint32_t mask = 1; mask < (1u << cells); ++mask) {
    Correspondence r;
    for (int c = 0; c < cells; ++c)
      if (mask & (1u << c)) r.pairs.emplace_back(c / y.n, c % y.n);
    if (!r.covers(x, y)) continue;
    best = std::min(best, ghp_upper_bound_best_coupling(x, y, r));
  }
  return best;
}

}  // namespace fkhc::oracle
