#include "fkhc/bijection.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace fkhc {

namespace {

struct Dsu {
  std::vector<int32_t> parent;
  explicit Dsu(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int32_t>(i);
  }
  int32_t find(int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int32_t x, int32_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[y] = x;
  }
};

}  // namespace

std::vector<int32_t> match_word(std::span<const Letter> word) {
  const size_t n = word.size();
  std::vector<int32_t> match(n, -1);
  std::vector<int32_t> stack_a, stack_b;
  for (size_t i = 0; i < n; ++i) {
    switch (word[i]) {
      case Letter::a:
        stack_a.push_back(static_cast<int32_t>(i));
        break;
      case Letter::b:
        stack_b.push_back(static_cast<int32_t>(i));
        break;
      case Letter::A:
        if (!stack_a.empty()) {
          match[i] = stack_a.back();
          match[stack_a.back()] = static_cast<int32_t>(i);
          stack_a.pop_back();
        }
        break;
      case Letter::B:
        if (!stack_b.empty()) {
          match[i] = stack_b.back();
          match[stack_b.back()] = static_cast<int32_t>(i);
          stack_b.pop_back();
        }
        break;
      case Letter::F:
        if (!stack_a.empty() || !stack_b.empty()) {
          int32_t j;
          if (stack_b.empty() ||
              (!stack_a.empty() && stack_a.back() > stack_b.back())) {
            j = stack_a.back();
            stack_a.pop_back();
          } else {
            j = stack_b.back();
            stack_b.pop_back();
          }
          match[i] = j;
          match[j] = static_cast<int32_t>(i);
        }
        break;
    }
  }
  return match;
}

ArcDiagram build_arc_diagram(const WordWindow& w, int64_t lo, int64_t hi) {
  assert(lo >= w.lo() && hi <= w.hi());
  ArcDiagram d;
  d.lo = lo;
  d.hi = hi;
  for (int64_t t = lo; t <= hi; ++t) {
    if (!w.resolved(t)) {
      d.unresolved.push_back(t);
      continue;
    }
    const int64_t m = w.match(t);
    if (m < lo || m > hi) {
      d.unresolved.push_back(t);
      continue;
    }
    if (m > t) continue;  // record each pair at its order end
    const Letter burger = w.at(m);
    d.arcs.push_back(Arc{m, t, burger == Letter::a, w.at(t) == Letter::F});
  }
  return d;
}

ArcDiagram build_arc_diagram_cycle(std::span<const Letter> word) {
  if (word.size() % 2 != 0)
    throw std::invalid_argument("finite bijection needs an even word length");
  const auto match = match_word(word);
  ArcDiagram d;
  d.lo = 0;
  d.hi = static_cast<int64_t>(word.size()) - 1;
  d.cycle = true;
  for (size_t i = 0; i < word.size(); ++i) {
    if (match[i] < 0)
      throw std::invalid_argument("finite bijection needs a reducible word");
    if (match[i] > static_cast<int32_t>(i)) continue;
    const size_t s = static_cast<size_t>(match[i]);
    d.arcs.push_back(Arc{static_cast<int64_t>(s), static_cast<int64_t>(i),
                         word[s] == Letter::a, word[i] == Letter::F});
  }
  return d;
}

FaceClasses build_face_classes(const ArcDiagram& d, bool close_ends) {
  const int64_t span = d.length();
  const size_t n_seg = static_cast<size_t>(d.cycle ? span : span + 1);
  if (span + 1 > INT32_MAX) throw std::invalid_argument("window too large");

  FaceClasses f;
  f.lo = d.lo;
  f.cycle = d.cycle;
  f.red_of_seg.assign(n_seg, 0);
  f.blue_of_seg.assign(n_seg, 0);

  Dsu upper(n_seg), lower(n_seg);
  auto seg = [&](int64_t t) -> int32_t {
    int64_t k = t - d.lo;
    if (d.cycle) k %= span;
    return static_cast<int32_t>(k);
  };

  // A resolved time is the endpoint of exactly one arc; the faces on the
  // other side of the axis are not separated there.
  std::vector<uint8_t> side(static_cast<size_t>(span), 0);  // 0 none, 1 upper, 2 lower
  for (const Arc& a : d.arcs) {
    side[static_cast<size_t>(a.s - d.lo)] = a.upper ? 1 : 2;
    side[static_cast<size_t>(a.t - d.lo)] = a.upper ? 1 : 2;
  }
  for (int64_t t = d.lo; t <= d.hi; ++t) {
    switch (side[static_cast<size_t>(t - d.lo)]) {
      case 1:
        lower.unite(seg(t), seg(t + 1));
        break;
      case 2:
        upper.unite(seg(t), seg(t + 1));
        break;
      default:
        break;  // unresolved: unknown side, merge neither
    }
  }
  for (const Arc& a : d.arcs) {
    if (a.upper)
      upper.unite(seg(a.s), seg(a.t + 1));
    else
      lower.unite(seg(a.s), seg(a.t + 1));
  }
  if (close_ends && !d.cycle) {
    upper.unite(seg(d.lo), seg(d.hi + 1));
    lower.unite(seg(d.lo), seg(d.hi + 1));
  }

  // Compress roots to dense ids in first-seen segment order.
  std::vector<int32_t> red_id(n_seg, -1), blue_id(n_seg, -1);
  for (size_t k = 0; k < n_seg; ++k) {
    const int32_t ru = upper.find(static_cast<int32_t>(k));
    if (red_id[ru] < 0) red_id[ru] = f.n_red++;
    f.red_of_seg[k] = red_id[ru];
    const int32_t rl = lower.find(static_cast<int32_t>(k));
    if (blue_id[rl] < 0) blue_id[rl] = f.n_blue++;
    f.blue_of_seg[k] = blue_id[rl];
  }

  f.red_dirty.assign(static_cast<size_t>(f.n_red), 0);
  f.blue_dirty.assign(static_cast<size_t>(f.n_blue), 0);
  if (!d.cycle && !close_ends) {
    auto mark = [&](int64_t t) {
      const size_t k = f.seg_index(t);
      f.red_dirty[f.red_of_seg[k]] = 1;
      f.blue_dirty[f.blue_of_seg[k]] = 1;
    };
    mark(d.lo);
    mark(d.hi + 1);
    for (int64_t t : d.unresolved) {
      mark(t);
      mark(t + 1);
    }
  }
  return f;
}

DecoratedMap build_decorated_map(const FaceClasses& f, const ArcDiagram& d,
                                 bool flips) {
  DecoratedMap m;
  m.faces = f;
  m.diagram = d;
  m.edges.reserve(d.arcs.size());
  for (const Arc& a : d.arcs) {
    const bool flipped = flips && a.flip;
    MapEdge e;
    e.s = a.s;
    e.t = a.t;
    e.flipped = flipped;
    DualGraphEdge de;
    de.s = a.s;
    de.t = a.t;
    if (a.upper) {
      e.kind = EdgeKind::Tree;
      e.u = f.red_vertex(a.s);
      e.v = f.red_vertex(a.s + 1);
      e.in_g = !flipped;
      de.u = f.blue_vertex(a.s);
      de.v = f.blue_vertex(a.t);
      de.in_gstar = flipped;
    } else {
      e.kind = EdgeKind::Dual;
      e.u = f.red_vertex(a.s);
      e.v = f.red_vertex(a.t);
      e.in_g = flipped;
      de.u = f.blue_vertex(a.s);
      de.v = f.blue_vertex(a.s + 1);
      de.in_gstar = !flipped;
    }
    m.edges.push_back(e);
    m.dual_edges.push_back(de);
    if (flipped) m.flips.push_back(FlipRecord{a.t, a.s, a.upper});
  }

  if (d.cycle || (d.lo <= 0 && 0 <= d.hi + 1)) m.root = f.red_vertex(0);

  auto build_csr = [&](bool tree_only, std::vector<int32_t>& off,
                       std::vector<int32_t>& adj) {
    off.assign(static_cast<size_t>(f.n_red) + 1, 0);
    for (const MapEdge& e : m.edges) {
      if (tree_only && e.kind != EdgeKind::Tree) continue;
      ++off[e.u + 1];
      ++off[e.v + 1];
    }
    for (size_t i = 1; i < off.size(); ++i) off[i] += off[i - 1];
    adj.resize(off.back());
    std::vector<int32_t> cursor(off.begin(), off.end() - 1);
    for (const MapEdge& e : m.edges) {
      if (tree_only && e.kind != EdgeKind::Tree) continue;
      adj[cursor[e.u]++] = e.v;
      adj[cursor[e.v]++] = e.u;
    }
  };
  build_csr(false, m.m_off, m.m_adj);
  build_csr(true, m.t_off, m.t_adj);
  return m;
}

DecoratedMap build_map(const WordWindow& w, int64_t lo, int64_t hi, bool flips,
                       bool close_ends) {
  const ArcDiagram d = build_arc_diagram(w, lo, hi);
  return build_decorated_map(build_face_classes(d, close_ends), d, flips);
}

DecoratedMap build_map_cycle(std::span<const Letter> word, bool flips) {
  const ArcDiagram d = build_arc_diagram_cycle(word);
  return build_decorated_map(build_face_classes(d), d, flips);
}

std::vector<int64_t> DecoratedMap::time_fiber_counts() const {
  std::vector<int64_t> fiber(static_cast<size_t>(n_red()), 0);
  const int64_t t_end = diagram.cycle ? diagram.hi : diagram.hi + 1;
  for (int64_t t = diagram.lo; t <= t_end; ++t) ++fiber[red_vertex(t)];
  return fiber;
}

std::string canonical_code(const DecoratedMap& m) {
  if (!m.diagram.cycle)
    throw std::invalid_argument("canonical codes are defined for finite maps");
  const FaceClasses& f = m.faces;
  const size_t L = f.n_segments();

  // Rotation order around a face vertex: its corner times in circular
  // ascending order (nested arcs visit a face's segments monotonically).
  std::vector<std::vector<int32_t>> red_corners(f.n_red), blue_corners(f.n_blue);
  for (size_t k = 0; k < L; ++k) {
    red_corners[f.red_of_seg[k]].push_back(static_cast<int32_t>(k));
    blue_corners[f.blue_of_seg[k]].push_back(static_cast<int32_t>(k));
  }

  std::vector<int32_t> red_label(f.n_red, -1), blue_label(f.n_blue, -1);
  int32_t next_red = 0, next_blue = 0;
  struct Item {
    bool red;
    int32_t v;
    int32_t start;  // corner time by which the vertex was discovered
  };
  std::vector<Item> queue;
  red_label[f.red_of_seg[0]] = next_red++;
  queue.push_back({true, f.red_of_seg[0], 0});

  std::string code;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const Item it = queue[qi];
    const auto& corners = it.red ? red_corners[it.v] : blue_corners[it.v];
    const size_t m0 = static_cast<size_t>(
        std::lower_bound(corners.begin(), corners.end(), it.start) -
        corners.begin());
    for (size_t j = 0; j < corners.size(); ++j) {
      const int32_t t = corners[(m0 + j) % corners.size()];
      if (it.red) {
        const int32_t u = f.blue_of_seg[t];
        if (blue_label[u] < 0) {
          blue_label[u] = next_blue++;
          queue.push_back({false, u, t});
        }
        code += 'B' + std::to_string(blue_label[u]);
      } else {
        const int32_t u = f.red_of_seg[t];
        if (red_label[u] < 0) {
          red_label[u] = next_red++;
          queue.push_back({true, u, t});
        }
        code += 'R' + std::to_string(red_label[u]);
      }
    }
    code += ';';
  }

  // Quadrangle descriptors: the corner cycle with the diagonal endpoints
  // starred, canonicalized over rotations.
  std::vector<std::string> quads;
  for (const MapEdge& e : m.edges) {
    std::string tok[4];
    const bool upper_arc = e.kind == EdgeKind::Tree;
    const bool diag_on_red = upper_arc ? !e.flipped : e.flipped;
    auto rtok = [&](int64_t t, bool starred) {
      return (starred ? "*R" : "R") + std::to_string(red_label[f.red_vertex(t)]);
    };
    auto btok = [&](int64_t t, bool starred) {
      return (starred ? "*B" : "B") + std::to_string(blue_label[f.blue_vertex(t)]);
    };
    if (upper_arc) {
      tok[0] = rtok(e.s, diag_on_red);
      tok[1] = btok(e.s, !diag_on_red);
      tok[2] = rtok(e.s + 1, diag_on_red);
      tok[3] = btok(e.t, !diag_on_red);
    } else {
      tok[0] = btok(e.s, !diag_on_red);
      tok[1] = rtok(e.s, diag_on_red);
      tok[2] = btok(e.s + 1, !diag_on_red);
      tok[3] = rtok(e.t, diag_on_red);
    }
    std::string best;
    for (int r = 0; r < 4; ++r) {
      std::string cand;
      for (int j = 0; j < 4; ++j) cand += tok[(r + j) % 4] + '.';
      if (best.empty() || cand < best) best = cand;
    }
    quads.push_back(best);
  }
  std::sort(quads.begin(), quads.end());

  std::string out = std::to_string(f.n_red) + ':' + std::to_string(f.n_blue) + '|' + code + '|';
  for (const auto& q : quads) {
    out += q;
    out += '/';
  }
  return out;
}

}  // namespace fkhc
