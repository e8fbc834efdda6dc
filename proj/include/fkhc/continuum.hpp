#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fkhc/metrics.hpp"

namespace fkhc {

// A tree encoded by a function g sampled on a uniform two-sided grid:
// d_g(s,t) = g(s) + g(t) - 2 min_{[s,t]} g. g(0) = 0 at index idx0.
struct FunctionTree {
  double step = 0.0;
  int64_t idx0 = 0;
  std::vector<double> vals;
  uint64_t seed = 0;

  int64_t size() const { return static_cast<int64_t>(vals.size()); }
  double time_of(int64_t i) const { return static_cast<double>(i - idx0) * step; }
  double value(int64_t i) const { return vals[static_cast<size_t>(i)]; }

  // Distance from the root class: g(t) - 2 min over [0 ^ t, 0 v t].
  // Materialized as prefix minima by finalize().
  std::vector<double> min_to_zero;
  void finalize();
  double dist_root(int64_t i) const {
    return vals[static_cast<size_t>(i)] - 2.0 * min_to_zero[static_cast<size_t>(i)];
  }

  double d_g(int64_t i, int64_t j) const;  // O(|i-j|) scan
};

// Two-sided Brownian path on a uniform grid: Gaussian increments of
// variance var_rate*step, fully determined by (seed, index).
FunctionTree sample_brownian_tree(uint64_t seed, double step, double horizon,
                                  double var_rate);

// Grows the horizon (doubling) until the path has hit -depth on both sides
// of 0, up to max_horizon. Returns nullopt when truncated.
std::optional<FunctionTree> sample_brownian_until(uint64_t seed, double step,
                                                  double var_rate, double depth,
                                                  double max_horizon);

// Rescaled discrete tree: vals[i] = H_{t}/n for t in [t_lo, t_hi] on grid
// step 1/n^2 (time t maps to x = t/n^2).
FunctionTree function_tree_from_contour(const ContourPair& hc, int64_t n,
                                        int64_t t_lo, int64_t t_hi);

// I_r: grid times whose d_g-distance to the root is <= r (a union of
// intervals; the projection preimage of the closed ball).
struct BallInterval {
  std::vector<uint8_t> mask;  // per grid index
  int64_t lo = 0, hi = -1;    // tightest index range containing the ball
  int64_t count = 0;          // # grid points in the ball
  bool truncated = false;     // g never went below -r on one side
};

BallInterval ball_interval(const FunctionTree& t, double r);

// Distortion/measure upper bound on d_GHP(B_r(T_A), B_r(T_B)) from the
// shared-time correspondence: equal times paired on the common part,
// spill-over times matched to the nearest ball point, restricted measures
// compared by the symmetric difference of the ball preimages.
struct GhpTreeBound {
  bool ok = false;
  double bound = 0.0;
  double sup_diff = 0.0;      // sup |A - B| over the union of ball preimages
  double spill = 0.0;         // distance excess of unmatched-side points
  double measure_term = 0.0;  // lambda of the symmetric difference
  bool truncated = false;
};

GhpTreeBound ghp_tree_bound(const FunctionTree& a, const FunctionTree& b, double r);

// Quadrature of int_0^R e^{-r} (1 ^ bound(r)) dr by the trapezoid rule on
// the given grid, plus the e^{-R} tail so the result is an upper bound.
double local_ghp_integral(const std::vector<std::pair<double, double>>& r_bounds,
                          double truncation_R);

// Binary serialization: one JSON header line, then raw little-endian
// 64-bit floats.
void write_function_tree(const FunctionTree& t, const std::string& path);
FunctionTree read_function_tree(const std::string& path);

}  // namespace fkhc
