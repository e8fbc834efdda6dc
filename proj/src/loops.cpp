#include "fkhc/loops.hpp"

#include <algorithm>
#include <cassert>

#include "fkhc/metrics.hpp"

namespace fkhc {

namespace {

// Slot 2i   = left Tutte side of the triangle of time lo+i  (edge E(lo+i))
// Slot 2i+1 = right side of the same triangle (edge E(lo+i+1)).
struct SlotGraph {
  int64_t lo, L;
  bool cycle;
  std::vector<int32_t> pair_link, tutte_link;
  std::vector<int64_t> pair_f;  // F-time when the slot's quadrangle is flipped

  explicit SlotGraph(const DecoratedMap& m)
      : lo(m.diagram.lo), L(m.diagram.length()), cycle(m.diagram.cycle) {
    const size_t n = static_cast<size_t>(2 * L);
    pair_link.assign(n, -1);
    tutte_link.assign(n, -1);
    pair_f.assign(n, INT64_MIN);
    auto link_p = [&](int64_t x, int64_t y, int64_t f) {
      pair_link[static_cast<size_t>(x)] = static_cast<int32_t>(y);
      pair_link[static_cast<size_t>(y)] = static_cast<int32_t>(x);
      if (f != INT64_MIN) {
        pair_f[static_cast<size_t>(x)] = f;
        pair_f[static_cast<size_t>(y)] = f;
      }
    };
    for (const MapEdge& e : m.edges) {
      const int64_t is = e.s - lo, it = e.t - lo;
      const int64_t f = e.flipped ? e.t : INT64_MIN;
      if (!e.flipped) {
        link_p(2 * is, 2 * is + 1, f);
        link_p(2 * it, 2 * it + 1, f);
      } else {
        link_p(2 * is, 2 * it + 1, f);
        link_p(2 * is + 1, 2 * it, f);
      }
    }
    const int64_t first = cycle ? 0 : 1;
    for (int64_t j = first; j < L; ++j) {
      const int64_t prev = (j - 1 + L) % L;
      tutte_link[static_cast<size_t>(2 * j)] = static_cast<int32_t>(2 * prev + 1);
      tutte_link[static_cast<size_t>(2 * prev + 1)] = static_cast<int32_t>(2 * j);
    }
  }

  int64_t cross_time(int32_t slot) const {
    int64_t e = slot / 2 + (slot & 1);
    if (cycle) e %= L;
    return lo + e;
  }
};

}  // namespace

std::vector<Loop> trace_loops(const DecoratedMap& m) {
  const SlotGraph g(m);
  const size_t n = g.pair_link.size();
  std::vector<uint8_t> visited(n, 0);
  std::vector<Loop> out;

  for (size_t s0 = 0; s0 < n; ++s0) {
    if (visited[s0]) continue;
    visited[s0] = 1;
    Loop lp;
    std::vector<int64_t> back, front;
    bool closed = false;

    int32_t cur = static_cast<int32_t>(s0);
    while (true) {  // alternate pair link, then Tutte crossing
      const int32_t p = g.pair_link[cur];
      if (p < 0) break;
      if (g.pair_f[cur] != INT64_MIN)
        lp.owner_f = lp.owner_f == INT64_MIN ? g.pair_f[cur]
                                             : std::min(lp.owner_f, g.pair_f[cur]);
      visited[p] = 1;
      back.push_back(g.cross_time(p));
      const int32_t nxt = g.tutte_link[p];
      if (nxt < 0) break;
      if (nxt == static_cast<int32_t>(s0)) {
        closed = true;
        break;
      }
      if (visited[nxt]) break;  // structurally impossible; guards a cycle bug
      visited[nxt] = 1;
      cur = nxt;
    }

    if (!closed) {
      lp.complete = false;
      cur = static_cast<int32_t>(s0);
      while (true) {  // walk the other way: Tutte crossing, then pair link
        front.push_back(g.cross_time(cur));
        const int32_t q = g.tutte_link[cur];
        if (q < 0 || visited[q]) break;
        visited[q] = 1;
        const int32_t pr = g.pair_link[q];
        if (pr < 0) break;
        if (g.pair_f[q] != INT64_MIN)
          lp.owner_f = lp.owner_f == INT64_MIN ? g.pair_f[q]
                                               : std::min(lp.owner_f, g.pair_f[q]);
        if (visited[pr]) break;
        visited[pr] = 1;
        cur = pr;
      }
      std::reverse(front.begin(), front.end());
      front.insert(front.end(), back.begin(), back.end());
      lp.crossings = std::move(front);
    } else {
      lp.crossings = std::move(back);
    }

    if (lp.crossings.empty()) continue;  // isolated boundary sliver
    for (int64_t t : lp.crossings)
      lp.clean = lp.clean && !m.faces.red_dirty[m.red_vertex(t)];
    out.push_back(std::move(lp));
  }
  return out;
}

namespace {

// Reusable bounded BFS over the map adjacency.
struct Scratch {
  std::vector<int32_t> dist;
  std::vector<int32_t> touched, queue;

  int64_t max_pairwise(const DecoratedMap& m, const std::vector<int32_t>& pts) {
    if (pts.size() <= 1) return 0;
    dist.assign(static_cast<size_t>(m.n_red()), -1);
    int64_t best = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      size_t remaining = pts.size() - i - 1;
      for (size_t j = i + 1; j < pts.size(); ++j)
        if (pts[j] == pts[i]) --remaining;
      touched.clear();
      queue.clear();
      dist[pts[i]] = 0;
      touched.push_back(pts[i]);
      queue.push_back(pts[i]);
      for (size_t head = 0; head < queue.size() && remaining > 0; ++head) {
        const int32_t u = queue[head];
        for (int32_t k = m.m_off[u]; k < m.m_off[u + 1]; ++k) {
          const int32_t v = m.m_adj[k];
          if (dist[v] >= 0) continue;
          dist[v] = dist[u] + 1;
          touched.push_back(v);
          queue.push_back(v);
          for (size_t j = i + 1; j < pts.size(); ++j)
            if (pts[j] == v) {
              best = std::max<int64_t>(best, dist[v]);
              --remaining;
            }
        }
      }
      if (remaining > 0) return -1;  // endpoints not mutually reachable
      for (int32_t v : touched) dist[v] = -1;
    }
    return best;
  }
};

std::vector<int32_t> loop_endpoints(const Loop& loop, const DecoratedMap& m) {
  std::vector<int32_t> pts;
  pts.reserve(loop.crossings.size());
  for (int64_t t : loop.crossings) pts.push_back(m.red_vertex(t));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

int64_t loop_diameter(const Loop& loop, const DecoratedMap& m) {
  if (!loop.complete) return -1;
  Scratch scratch;
  return scratch.max_pairwise(m, loop_endpoints(loop, m));
}

LoopBallStat loop_ball_statistic(const DecoratedMap& m,
                                 const std::vector<Loop>& loops,
                                 const std::vector<int32_t>& dist_root,
                                 int64_t n) {
  LoopBallStat out;
  for (int32_t v = 0; v < m.n_red(); ++v)
    if (dist_root[v] >= 0 && dist_root[v] <= n && m.faces.red_dirty[v])
      return out;  // ball reaches the uncertain boundary region

  Scratch scratch;
  for (const Loop& lp : loops) {
    bool meets = false;
    for (int64_t t : lp.crossings) {
      const int32_t d = dist_root[m.red_vertex(t)];
      if (d >= 0 && d <= n) {
        meets = true;
        break;
      }
    }
    if (!meets) continue;
    if (!lp.complete || !lp.clean) return out;  // undetermined loop in scope
    const int64_t diam = scratch.max_pairwise(m, loop_endpoints(lp, m));
    if (diam < 0) return out;
    ++out.loops_in_ball;
    out.max_diam = std::max(out.max_diam, diam);
  }
  out.stat = static_cast<double>(out.max_diam) / static_cast<double>(n);
  out.ok = true;
  return out;
}

}  // namespace fkhc
