#include "fkhc/bubbles.hpp"

#include <algorithm>
#include <cassert>

#include "fkhc/metrics.hpp"
#include "fkhc/rmq.hpp"

namespace fkhc {

PinchChain pinch_chain(WordWindow& w, int64_t t, int steps, int64_t span_cap) {
  PinchChain chain;
  chain.base = t;
  Interval cur{t, t - 1};  // empty slot between t-1 and t
  for (int k = 0; k < steps; ++k) {
    const auto next = w.closure(cur.lo - 1, cur.hi + 1, span_cap);
    if (!next) return chain;
    assert(next->lo <= cur.lo - 1 && next->hi >= cur.hi + 1);
    chain.intervals.push_back(*next);
    cur = *next;
  }
  chain.complete = true;
  return chain;
}

StrongPinchChain strong_pinch_chain(WordWindow& w, int64_t t, int want_strong,
                                    int64_t span_cap, int64_t max_steps) {
  StrongPinchChain out;
  out.chain.base = t;
  Interval cur{t, t - 1};
  for (int64_t k = 1; k <= max_steps; ++k) {
    const auto next = w.closure(cur.lo - 1, cur.hi + 1, span_cap);
    if (!next) return out;
    out.chain.intervals.push_back(*next);
    const bool strong = next->lo == cur.lo - 1 && next->hi == cur.hi + 1 &&
                        w.at(next->lo) == Letter::a && w.at(next->hi) == Letter::F;
    cur = *next;
    if (strong) {
      out.tau.push_back(k);
      if (static_cast<int>(out.tau.size()) >= want_strong) {
        out.chain.complete = true;
        return out;
      }
    }
  }
  return out;
}

PinchIncrements pinch_increments(WordWindow& w, const PinchChain& chain) {
  PinchIncrements inc;
  if (chain.intervals.empty()) return inc;
  const Interval outer = chain.intervals.back();
  const DecoratedMap m = build_map(w, outer.lo, outer.hi, true, true);

  std::vector<int32_t> pinch;
  pinch.push_back(m.red_vertex(chain.base));  // p_0 = V(t)
  for (const Interval& iv : chain.intervals) pinch.push_back(m.red_vertex(iv.lo));

  for (size_t i = 0; i + 1 < pinch.size(); ++i) {
    const auto dt = tree_distances_bfs(m, pinch[i]);
    const auto dm = map_distances(m, pinch[i]);
    if (dt[pinch[i + 1]] < 0 || dm[pinch[i + 1]] < 0) return inc;
    inc.d_tree.push_back(dt[pinch[i + 1]]);
    inc.d_map.push_back(dm[pinch[i + 1]]);
  }
  inc.ok = true;
  return inc;
}

bool is_strong_reducible(WordWindow& w, int64_t a, int64_t b) {
  if (a >= b) return false;
  if (!w.ensure(a, b)) return false;
  if (w.at(a) != Letter::a || w.at(b) != Letter::F) return false;
  if (!w.resolved(a) || w.match(a) != b) return false;
  return b == a + 1 || w.is_reducible(a + 1, b - 1);
}

std::vector<Interval> strong_holes(WordWindow& w, const Interval& bubble) {
  std::vector<Interval> cand;
  for (int64_t j = bubble.lo + 1; j < bubble.hi; ++j) {
    if (w.at(j) != Letter::F || !w.resolved(j)) continue;
    const int64_t i = w.match(j);
    if (i <= bubble.lo || i >= j) continue;
    if (is_strong_reducible(w, i, j)) cand.push_back({i, j});
  }
  // Matched a--F pairs are non-crossing, so candidates are nested or
  // disjoint; keep the maximal ones.
  std::sort(cand.begin(), cand.end(),
            [](const Interval& x, const Interval& y) {
              return x.lo != y.lo ? x.lo < y.lo : x.hi > y.hi;
            });
  std::vector<Interval> holes;
  int64_t covered_to = bubble.lo;
  for (const Interval& c : cand) {
    if (c.lo > covered_to || holes.empty()) {
      holes.push_back(c);
      covered_to = c.hi;
    }
  }
  return holes;
}

BubbleExtent strong_bubble_extent(WordWindow& w, const Interval& bubble,
                                  const std::vector<Interval>& holes,
                                  int64_t max_points) {
  BubbleExtent out;
  if (!w.ensure(bubble.lo, bubble.hi)) return out;

  // Candidate vertex times: [lo, hi+1] minus hole interiors (a hole
  // [i,j] keeps its pinch V(i) = V(j+1) on the bubble boundary).
  std::vector<int64_t> times;
  size_t h = 0;
  for (int64_t t = bubble.lo; t <= bubble.hi + 1; ++t) {
    while (h < holes.size() && holes[h].hi + 1 < t) ++h;
    if (h < holes.size() && holes[h].lo < t && t <= holes[h].hi) continue;
    times.push_back(t);
  }
  if (times.size() > static_cast<size_t>(max_points)) {
    std::vector<int64_t> sub;
    const size_t stride = times.size() / static_cast<size_t>(max_points) + 1;
    for (size_t i = 0; i < times.size(); i += stride) sub.push_back(times[i]);
    sub.push_back(times.back());
    times = std::move(sub);
  }

  // d_T from the local walk: additive anchor cancels in the formula.
  std::vector<int32_t> hloc(static_cast<size_t>(bubble.length()) + 1, 0);
  int32_t acc = 0;
  for (int64_t t = bubble.lo; t <= bubble.hi; ++t) {
    const Letter x = w.at(t);
    if (x == Letter::a) ++acc;
    else if (x == Letter::A) --acc;
    else if (x == Letter::F) {
      if (!w.resolved(t)) return out;
      if (w.f_kind(t) == Letter::a) --acc;
    }
    hloc[static_cast<size_t>(t - bubble.lo) + 1] = acc;
  }
  MinSparseTable<int32_t> rmq{std::span<const int32_t>(hloc)};

  int64_t best = 0;
  for (size_t i = 0; i < times.size(); ++i) {
    const size_t ii = static_cast<size_t>(times[i] - bubble.lo);
    for (size_t j = i + 1; j < times.size(); ++j) {
      const size_t jj = static_cast<size_t>(times[j] - bubble.lo);
      const int64_t d = static_cast<int64_t>(hloc[ii]) + hloc[jj] -
                        2 * static_cast<int64_t>(rmq.range_min(ii, jj));
      best = std::max(best, d);
    }
  }
  out.extent = best;
  out.points = static_cast<int64_t>(times.size());
  out.ok = true;
  return out;
}

}  // namespace fkhc
