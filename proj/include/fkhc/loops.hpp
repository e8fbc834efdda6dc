#pragma once

#include <cstdint>
#include <vector>

#include "fkhc/bijection.hpp"

namespace fkhc {

// An FK loop, represented by the Tutte edges (times) it crosses, in
// traversal order. Every Tutte edge of the clean region lies on exactly
// one loop; in each quadrangle the four bounding Tutte edges pair up on
// the two sides of the post-flip diagonal.
struct Loop {
  std::vector<int64_t> crossings;
  bool complete = true;  // closed cycle inside the resolved region
  bool clean = true;     // every crossed edge has a clean red endpoint
  int64_t owner_f = INT64_MIN;  // smallest flipped F-time traversed, if any
};

std::vector<Loop> trace_loops(const DecoratedMap& m);

// Max d_M between red endpoints of crossed Tutte edges; -1 for partial
// loops. Uses bounded BFS around the (typically tiny) endpoint set.
int64_t loop_diameter(const Loop& loop, const DecoratedMap& m);

struct LoopBallStat {
  bool ok = false;       // ball touched a dirty vertex or a partial loop
  double stat = 0.0;     // sup over loops meeting the ball of diam/n
  int64_t loops_in_ball = 0;
  int64_t max_diam = 0;
};

// `dist_root` = BFS distances from the root in M. A loop meets the ball
// when it crosses a Tutte edge whose red endpoint is within distance n.
LoopBallStat loop_ball_statistic(const DecoratedMap& m,
                                 const std::vector<Loop>& loops,
                                 const std::vector<int32_t>& dist_root,
                                 int64_t n);

}  // namespace fkhc
