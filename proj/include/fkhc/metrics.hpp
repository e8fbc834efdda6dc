#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fkhc/bijection.hpp"
#include "fkhc/word.hpp"

namespace fkhc {

// Net burger counts H (hamburgers) and C (cheeseburgers) anchored at
// H_0 = C_0 = 0, with every F replaced by the kind of burger it consumed.
// Values live at integer times [lo, hi+1].
struct ContourPair {
  int64_t lo = 0, hi = -1;
  std::vector<int32_t> h, c;
  // Maximal time range around 0 on which values are determined (an F with
  // an unresolved partner makes the walk unknown past it).
  int64_t valid_lo = 0, valid_hi = 0;

  int32_t h_at(int64_t t) const { return h[static_cast<size_t>(t - lo)]; }
  int32_t c_at(int64_t t) const { return c[static_cast<size_t>(t - lo)]; }
  bool valid(int64_t t) const { return valid_lo <= t && t <= valid_hi; }
};

// Requires lo <= 0 <= hi. Kinds of resolved F letters are read from the
// window's match table (partners may lie outside [lo,hi]).
ContourPair build_contour(const WordWindow& w, int64_t lo, int64_t hi);

// Adaptively resolves the partner of every F in [lo,hi]. False if a cap
// was hit; the contour is then only valid up to the first unknown F.
bool resolve_f_kinds(WordWindow& w, int64_t lo, int64_t hi, int64_t span_cap);

// d_T between the vertex classes of times s and t:
// H_s + H_t - 2 min_{[s,t]} H. Exact; equals BFS on the tree T.
int64_t tree_distance(const ContourPair& hc, int64_t s, int64_t t);

// BFS over a CSR adjacency; -1 for unreachable vertices.
std::vector<int32_t> bfs_distances(const std::vector<int32_t>& off,
                                   const std::vector<int32_t>& adj, int32_t src);

inline std::vector<int32_t> map_distances(const DecoratedMap& m, int32_t src) {
  return bfs_distances(m.m_off, m.m_adj, src);
}
inline std::vector<int32_t> tree_distances_bfs(const DecoratedMap& m, int32_t src) {
  return bfs_distances(m.t_off, m.t_adj, src);
}

// One root bubble: the smallest reducible interval covering [-1,0], the
// distances from the root o = V(0) to its pinch point, and the order count
// K of the reduced word X(0..t). d_T(o,p(o)) = K holds sample by sample.
struct RootBubbleSample {
  bool ok = false;        // false when the search hit the span cap
  Interval bubble;
  int64_t d_tree = 0, d_map = 0;
  int64_t k_orders = 0;
};

RootBubbleSample root_bubble_sample(uint64_t seed, double p, int64_t span_cap);

struct AlphaEstimate {
  double a_hat = 0.0;           // E d_T(o,p(o)) / E d_M(o,p(o))
  double ci_lo = 0.0, ci_hi = 0.0;  // percentile bootstrap, 95%
  int64_t samples = 0, discards = 0;
  double mean_dt = 0.0, mean_dm = 0.0;
};

// Requires p > 1/2 (the mean bubble quantities are finite only there).
AlphaEstimate estimate_alpha(double p, int64_t n_samples, uint64_t master_seed,
                             int64_t span_cap, int n_bootstrap = 1000);

// Gap statistic of one sample: sup over a deterministic grid of time pairs
// in [-r n^2, r n^2] (spacing eps*n^2) of |a_hat d_M - d_T| / n.
struct MetricGapResult {
  bool ok = false;  // grid vertex dirty or window capped -> discard
  double stat = 0.0;
  int64_t pairs = 0;
};

MetricGapResult metric_gap_sample(uint64_t seed, double p, int64_t n, double r,
                                  double eps, double alpha_hat, int64_t span_cap);

}  // namespace fkhc
