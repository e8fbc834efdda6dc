#include "fkhc/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "fkhc/rng.hpp"

namespace fkhc {

ContourPair build_contour(const WordWindow& w, int64_t lo, int64_t hi) {
  if (!(lo <= 0 && 0 <= hi)) throw std::invalid_argument("contour needs 0 inside [lo,hi]");
  ContourPair hc;
  hc.lo = lo;
  hc.hi = hi;
  const size_t n = static_cast<size_t>(hi - lo + 2);
  hc.h.assign(n, 0);
  hc.c.assign(n, 0);
  hc.valid_lo = lo;
  hc.valid_hi = hi + 1;

  int32_t h = 0, c = 0;
  for (int64_t t = lo; t <= hi; ++t) {
    int dh = 0, dc = 0;
    switch (w.at(t)) {
      case Letter::a: dh = +1; break;
      case Letter::b: dc = +1; break;
      case Letter::A: dh = -1; break;
      case Letter::B: dc = -1; break;
      case Letter::F:
        if (!w.resolved(t)) {
          // Unknown kind: the walk is undetermined past t (or before t+1
          // on the negative side).
          if (t >= 0) hc.valid_hi = std::min(hc.valid_hi, t);
          else hc.valid_lo = std::max(hc.valid_lo, t + 1);
        } else if (w.f_kind(t) == Letter::a) {
          dh = -1;
        } else {
          dc = -1;
        }
        break;
    }
    h += dh;
    c += dc;
    hc.h[static_cast<size_t>(t - lo + 1)] = h;
    hc.c[static_cast<size_t>(t - lo + 1)] = c;
  }
  const int32_t h0 = hc.h[static_cast<size_t>(-lo)];
  const int32_t c0 = hc.c[static_cast<size_t>(-lo)];
  for (auto& v : hc.h) v -= h0;
  for (auto& v : hc.c) v -= c0;
  return hc;
}

bool resolve_f_kinds(WordWindow& w, int64_t lo, int64_t hi, int64_t span_cap) {
  if (!w.ensure(lo, hi)) return false;
  bool all = true;
  for (int64_t t = lo; t <= hi; ++t) {
    if (w.at(t) != Letter::F || w.resolved(t)) continue;
    all &= w.match_of(t, span_cap).resolved;
  }
  return all;
}

int64_t tree_distance(const ContourPair& hc, int64_t s, int64_t t) {
  if (s > t) std::swap(s, t);
  assert(s >= hc.lo && t <= hc.hi + 1);
  int32_t m = hc.h_at(s);
  for (int64_t u = s + 1; u <= t; ++u) m = std::min(m, hc.h_at(u));
  return static_cast<int64_t>(hc.h_at(s)) + hc.h_at(t) - 2 * static_cast<int64_t>(m);
}

std::vector<int32_t> bfs_distances(const std::vector<int32_t>& off,
                                   const std::vector<int32_t>& adj, int32_t src) {
  std::vector<int32_t> dist(off.size() - 1, -1);
  std::vector<int32_t> queue;
  queue.reserve(dist.size());
  dist[src] = 0;
  queue.push_back(src);
  for (size_t head = 0; head < queue.size(); ++head) {
    const int32_t u = queue[head];
    const int32_t du = dist[u];
    for (int32_t k = off[u]; k < off[u + 1]; ++k) {
      const int32_t v = adj[k];
      if (dist[v] < 0) {
        dist[v] = du + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

RootBubbleSample root_bubble_sample(uint64_t seed, double p, int64_t span_cap) {
  RootBubbleSample s;
  WordWindow w(seed, p);
  const auto bubble = w.closure(-1, 0, span_cap);
  if (!bubble) return s;
  s.bubble = *bubble;
  s.k_orders = static_cast<int64_t>(w.reduce_range(0, bubble->hi).orders.size());

  // The bubble word is reducible, so its local map is complete once the two
  // enclosing Tutte edges are pinched together (close_ends).
  const DecoratedMap m = build_map(w, bubble->lo, bubble->hi, true, true);
  const int32_t o = m.red_vertex(0);
  const int32_t pinch = m.red_vertex(bubble->lo);
  const auto dt = tree_distances_bfs(m, o);
  const auto dm = map_distances(m, o);
  if (dt[pinch] < 0 || dm[pinch] < 0) return s;
  s.d_tree = dt[pinch];
  s.d_map = dm[pinch];
  s.ok = true;
  return s;
}

AlphaEstimate estimate_alpha(double p, int64_t n_samples, uint64_t master_seed,
                             int64_t span_cap, int n_bootstrap) {
  if (!(p > 0.5))
    throw std::invalid_argument("alpha estimate requires p > 1/2 (q > 4)");
  AlphaEstimate est;
  std::vector<double> dts, dms;
  dts.reserve(static_cast<size_t>(n_samples));
  dms.reserve(static_cast<size_t>(n_samples));
  for (int64_t i = 0; i < n_samples; ++i) {
    const RootBubbleSample s = root_bubble_sample(derive_seed(master_seed, static_cast<uint64_t>(i)), p, span_cap);
    if (!s.ok) {
      ++est.discards;
      continue;
    }
    dts.push_back(static_cast<double>(s.d_tree));
    dms.push_back(static_cast<double>(s.d_map));
  }
  est.samples = static_cast<int64_t>(dts.size());
  if (est.samples == 0) return est;

  double st = 0, sm = 0;
  for (size_t i = 0; i < dts.size(); ++i) {
    st += dts[i];
    sm += dms[i];
  }
  est.mean_dt = st / static_cast<double>(est.samples);
  est.mean_dm = sm / static_cast<double>(est.samples);
  est.a_hat = st / sm;

  // Percentile bootstrap of the ratio of means.
  const uint64_t bseed = derive_seed(master_seed, 0xb00757u);
  std::vector<double> ratios(static_cast<size_t>(n_bootstrap));
  const size_t n = dts.size();
  for (int b = 0; b < n_bootstrap; ++b) {
    double rt = 0, rm = 0;
    for (size_t i = 0; i < n; ++i) {
      const size_t j = static_cast<size_t>(
          hash_at(bseed, static_cast<uint64_t>(b) * n + i) % n);
      rt += dts[j];
      rm += dms[j];
    }
    ratios[static_cast<size_t>(b)] = rt / rm;
  }
  std::sort(ratios.begin(), ratios.end());
  const auto pick = [&](double q) {
    const size_t k = std::min(ratios.size() - 1,
                              static_cast<size_t>(q * static_cast<double>(ratios.size())));
    return ratios[k];
  };
  est.ci_lo = pick(0.025);
  est.ci_hi = pick(0.975);
  return est;
}

MetricGapResult metric_gap_sample(uint64_t seed, double p, int64_t n, double r,
                                  double eps, double alpha_hat, int64_t span_cap) {
  MetricGapResult res;
  const int64_t w_stat = static_cast<int64_t>(std::llround(r * static_cast<double>(n) * static_cast<double>(n)));
  const int64_t margin = std::max<int64_t>(w_stat, 4096);
  if (2 * (w_stat + margin) + 1 > span_cap) return res;
  WordWindow w(seed, p);
  if (!w.ensure(-w_stat - margin, w_stat + margin)) return res;

  const DecoratedMap m = build_map(w, w.lo(), w.hi());

  const int64_t step = std::max<int64_t>(1, static_cast<int64_t>(std::llround(eps * static_cast<double>(n) * static_cast<double>(n))));
  std::vector<int32_t> grid;
  for (int64_t t = -w_stat; t <= w_stat; t += step) {
    const int32_t v = m.red_vertex(t);
    if (!m.red_clean(v)) return res;  // dirty grid vertex: discard
    grid.push_back(v);
  }
  double best = 0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto dm = map_distances(m, grid[i]);
    const auto dt = tree_distances_bfs(m, grid[i]);
    for (size_t j = i + 1; j < grid.size(); ++j) {
      if (dm[grid[j]] < 0 || dt[grid[j]] < 0) return res;
      const double gap = std::abs(alpha_hat * dm[grid[j]] - dt[grid[j]]);
      best = std::max(best, gap);
      ++res.pairs;
    }
  }
  res.stat = best / static_cast<double>(n);
  res.ok = true;
  return res;
}

}  // namespace fkhc
