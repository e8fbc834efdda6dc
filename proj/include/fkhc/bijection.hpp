#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fkhc/word.hpp"

namespace fkhc {

// One arc of the diagram: matched pair (s,t), drawn above the axis for
// hamburger pairs and below for cheeseburger pairs. A flexible order takes
// the side of the burger it consumed.
struct Arc {
  int64_t s = 0, t = 0;  // burger time, order time (s < t)
  bool upper = false;    // hamburger side
  bool flip = false;     // order is F: diagonal flipped in the final step
};

struct ArcDiagram {
  int64_t lo = 0, hi = -1;
  bool cycle = false;  // finite-volume build: times live on a circle
  std::vector<Arc> arcs;
  std::vector<int64_t> unresolved;  // times whose partner is outside the window
  int64_t length() const { return hi - lo + 1; }
};

ArcDiagram build_arc_diagram(const WordWindow& w, int64_t lo, int64_t hi);
// Finite bijection: word must be reducible (every letter matched inside).
ArcDiagram build_arc_diagram_cycle(std::span<const Letter> word);

// Face classes of the arc map via union-find over axis segments.
// Segment k represents [t-1, t] for t = lo + k; the Tutte edge E(t)
// crosses it. V(t) is the upper class, V*(t) the lower class.
struct FaceClasses {
  int64_t lo = 0;
  bool cycle = false;
  int32_t n_red = 0, n_blue = 0;
  std::vector<int32_t> red_of_seg, blue_of_seg;
  std::vector<uint8_t> red_dirty, blue_dirty;  // per vertex id

  size_t n_segments() const { return red_of_seg.size(); }
  size_t seg_index(int64_t t) const {
    return cycle ? static_cast<size_t>(((t - lo) % static_cast<int64_t>(n_segments()) +
                                        static_cast<int64_t>(n_segments())) %
                                       static_cast<int64_t>(n_segments()))
                 : static_cast<size_t>(t - lo);
  }
  int32_t red_vertex(int64_t t) const { return red_of_seg[seg_index(t)]; }
  int32_t blue_vertex(int64_t t) const { return blue_of_seg[seg_index(t)]; }
};

// close_ends unites the two boundary segments on both sides; valid when
// [lo,hi] carries a reducible word (a filled bubble pinched at its ends),
// which makes every class interior-complete and nothing is marked dirty.
FaceClasses build_face_classes(const ArcDiagram& d, bool close_ends = false);

enum class EdgeKind : uint8_t {
  Tree,  // red edge of a hamburger pair (edge of the canonical tree T)
  Dual,  // dual of a cheeseburger pair's blue edge
};

struct MapEdge {
  int32_t u = 0, v = 0;  // red vertex ids
  int64_t s = 0, t = 0;  // the matched pair that produced it
  EdgeKind kind = EdgeKind::Tree;
  bool flipped = false;  // diagonal replaced by its dual (F order)
  bool in_g = false;     // membership in G after flips
};

struct DualGraphEdge {
  int32_t u = 0, v = 0;  // blue vertex ids
  int64_t s = 0, t = 0;
  bool in_gstar = false;
};

struct FlipRecord {
  int64_t f_time = 0, burger_time = 0;
  bool removed_red = false;  // color of the diagonal that was flipped away
};

// The decorated planar map (M, G) on a window, with the canonical spanning
// tree T (pre-flip red subgraph) and the Tutte-edge table.
struct DecoratedMap {
  FaceClasses faces;
  ArcDiagram diagram;
  std::vector<MapEdge> edges;           // edges of M (tree + dual-of-blue)
  std::vector<DualGraphEdge> dual_edges;
  std::vector<FlipRecord> flips;
  int32_t root = -1;  // V(0), or -1 when time 0 is outside the window

  // CSR adjacency over red ids: all of M, and the tree-only subgraph.
  std::vector<int32_t> m_off, m_adj;
  std::vector<int32_t> t_off, t_adj;

  int32_t n_red() const { return faces.n_red; }
  int32_t n_blue() const { return faces.n_blue; }
  int32_t red_vertex(int64_t t) const { return faces.red_vertex(t); }
  int32_t blue_vertex(int64_t t) const { return faces.blue_vertex(t); }
  bool red_clean(int32_t v) const { return !faces.red_dirty[v]; }

  int64_t degree(int32_t v) const { return m_off[v + 1] - m_off[v]; }
  // #{t : V(t) = v} over the window's Tutte edges (the time fiber).
  std::vector<int64_t> time_fiber_counts() const;
};

DecoratedMap build_decorated_map(const FaceClasses& f, const ArcDiagram& d,
                                 bool flips = true);

// Convenience pipelines.
DecoratedMap build_map(const WordWindow& w, int64_t lo, int64_t hi,
                       bool flips = true, bool close_ends = false);
DecoratedMap build_map_cycle(std::span<const Letter> word, bool flips = true);

// Canonical rooted code of a finite decorated map (cycle mode): a
// breadth-first relabeling that follows the rotation order around each
// vertex, plus the quadrangle/diagonal structure. Equal codes <=> equal
// rooted decorated maps.
std::string canonical_code(const DecoratedMap& m);

// Letter at time t as recorded in the diagram-owning word is not stored;
// loop tracing and serialization take the map plus its diagram.

// All matches of a standalone word (index-based, -1 = unmatched).
std::vector<int32_t> match_word(std::span<const Letter> word);

}  // namespace fkhc
