#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fkhc {

struct MeanVar {
  double mean = 0, var = 0;  // unbiased sample variance
  int64_t n = 0;
};

MeanVar mean_var(std::span<const double> x);
double covariance(std::span<const double> x, std::span<const double> y);

double percentile_sorted(std::span<const double> sorted, double q);

// Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2| (inputs copied
// and sorted internally).
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Regularized incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a); the upper
// tail of the chi-square distribution is Q(df/2, stat/2).
double gamma_q(double a, double x);
double chi2_sf(double stat, int64_t df);

// Goodness of fit of positive integer samples against Geometric(p) on
// {1,2,...}; bins with expected count < min_expected merge into the tail.
struct Chi2Result {
  double stat = 0;
  int64_t df = 0;
  double p_value = 0;
  int64_t bins = 0;
};
Chi2Result chi2_geometric_gof(std::span<const int64_t> values, double success_p,
                              double min_expected = 5.0);

double normal_cdf(double z);

// One-sided Mann-Whitney: p-value against the alternative "a is
// stochastically smaller than b" (normal approximation with tie
// correction).
struct MannWhitney {
  double u = 0, z = 0, p_less = 1.0;
};
MannWhitney mann_whitney_less(std::vector<double> a, std::vector<double> b);

// Deterministic mergeable quantile sketch: per-level sorted buffers of
// capacity k, compacted by keeping odd ranks with doubled weight. Rank
// error is bounded by (sum of level weights below the top) / n, roughly
// levels/k; with the default k=256 and n <= 1e6 that is under 1%.
// Merging is associative up to that same tolerance.
class QuantileSketch {
 public:
  explicit QuantileSketch(size_t k = 256) : k_(k) {}

  void add(double v);
  void merge(const QuantileSketch& other);
  double quantile(double q) const;  // q in [0,1]
  int64_t count() const { return count_; }
  double rank_error_bound() const;

 private:
  void compact_level(size_t level);
  size_t k_;
  int64_t count_ = 0;
  std::vector<std::vector<double>> levels_;  // level l entries carry weight 2^l
};

}  // namespace fkhc
