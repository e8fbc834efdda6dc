#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace fkhc {

// A finite pointed metric-measure space with an explicit distance matrix.
struct MetricMeasureSpace {
  int n = 0;
  std::vector<double> dist;  // n*n row-major
  std::vector<double> mass;
  int root = 0;

  double d(int i, int j) const { return dist[static_cast<size_t>(i) * n + j]; }
  double total_mass() const;
  void validate() const;  // symmetry, nonnegativity, triangle inequality
};

// A correspondence: pairs covering both spaces, containing (root, root).
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
  bool covers(const MetricMeasureSpace& x, const MetricMeasureSpace& y) const;
};

double distortion(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                  const Correspondence& r);

// dis(R)/2 + nu(R^c) for an explicit coupling (row-major |X| x |Y| matrix
// with marginals mass_X, mass_Y). Throws when the total masses differ.
double ghp_upper_bound(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                       const Correspondence& r, const std::vector<double>& coupling);

// Same bound with the best coupling for the given correspondence: the
// off-R mass is minimized exactly by a max-flow over the R-pairs.
double ghp_upper_bound_best_coupling(const MetricMeasureSpace& x,
                                     const MetricMeasureSpace& y,
                                     const Correspondence& r);

// Best bound over `candidates` random covering correspondences (plus a
// greedy nearest-neighbour one). An upper bound for d_GHP; on small
// spaces it comes close to the exact infimum.
double ghp_bound_optimized(const MetricMeasureSpace& x,
                           const MetricMeasureSpace& y, int candidates,
                           uint64_t seed);

}  // namespace fkhc
