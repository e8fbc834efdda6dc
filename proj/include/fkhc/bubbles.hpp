#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fkhc/bijection.hpp"
#include "fkhc/word.hpp"

namespace fkhc {

// The nested chain of reducible intervals around the slot (t-1, t): each
// step is the match-closure of the previous interval extended by one
// letter on both sides, so the chain grows strictly on both ends. The
// pinch vertex of step k is V(s_k) = V(t_k + 1).
struct PinchChain {
  int64_t base = 0;                  // chain anchored at slot (base-1, base)
  std::vector<Interval> intervals;   // I_1 .. I_k
  bool complete = false;             // reached the requested depth below cap
};

PinchChain pinch_chain(WordWindow& w, int64_t t, int steps, int64_t span_cap);

// Strong steps: I_{k+1} = [s_k - 1, t_k + 1] exactly, with X(s_k-1) = a and
// X(t_k+1) = F (necessarily matched to each other across the reducible
// middle). tau values are 1-based chain indices.
struct StrongPinchChain {
  PinchChain chain;
  std::vector<int64_t> tau;
};

StrongPinchChain strong_pinch_chain(WordWindow& w, int64_t t, int want_strong,
                                    int64_t span_cap, int64_t max_steps);

// Distances between consecutive pinch vertices p_0 = V(t), p_1, ..., p_k,
// measured on the local map of the outermost interval (geodesics between
// consecutive pinch points stay inside the corresponding filled bubble).
struct PinchIncrements {
  bool ok = false;
  std::vector<int64_t> d_tree, d_map;  // increment i: p_i -> p_{i+1}
};

PinchIncrements pinch_increments(WordWindow& w, const PinchChain& chain);

// X(a,b) strong reducible: a,b matched, X(a)=a, X(b)=F (equivalently the
// inner word is reducible or empty).
bool is_strong_reducible(WordWindow& w, int64_t a, int64_t b);

// Maximal strong reducible proper subintervals of (a,b).
std::vector<Interval> strong_holes(WordWindow& w, const Interval& bubble);

// Max pairwise d_T over vertices of the strong bubble (the region minus
// its strong holes); exact up to a deterministic subsample above
// `max_points` boundary times.
struct BubbleExtent {
  bool ok = false;
  int64_t extent = 0;
  int64_t points = 0;
};

BubbleExtent strong_bubble_extent(WordWindow& w, const Interval& bubble,
                                  const std::vector<Interval>& holes,
                                  int64_t max_points = 512);

}  // namespace fkhc
