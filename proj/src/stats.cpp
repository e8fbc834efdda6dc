#include "fkhc/stats.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "fkhc/kernels.hpp"

namespace fkhc {

MeanVar mean_var(std::span<const double> x) {
  MeanVar mv;
  mv.n = static_cast<int64_t>(x.size());
  if (mv.n == 0) return mv;
  const auto m = kernels::moments(x.data(), x.data(), x.size());
  mv.mean = m.sx / static_cast<double>(mv.n);
  if (mv.n > 1)
    mv.var = (m.sxx - m.sx * m.sx / static_cast<double>(mv.n)) /
             static_cast<double>(mv.n - 1);
  return mv;
}

double covariance(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  const int64_t n = static_cast<int64_t>(x.size());
  if (n < 2) return 0;
  const auto m = kernels::moments(x.data(), y.data(), x.size());
  return (m.sxy - m.sx * m.sy / static_cast<double>(n)) / static_cast<double>(n - 1);
}

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const size_t i = static_cast<size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] * (1 - frac) + sorted[i + 1] * frac;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

namespace {

double gamma_p_series(double a, double x) {
  double sum = 1.0 / a, term = sum, ap = a;
  for (int k = 0; k < 500; ++k) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  // Lentz continued fraction for Q(a,x), x > a+1.
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int k = 1; k < 500; ++k) {
    const double an = -static_cast<double>(k) * (static_cast<double>(k) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q domain");
  if (x == 0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_contfrac(a, x);
}

double chi2_sf(double stat, int64_t df) {
  return gamma_q(static_cast<double>(df) / 2.0, stat / 2.0);
}

Chi2Result chi2_geometric_gof(std::span<const int64_t> values, double success_p,
                              double min_expected) {
  Chi2Result res;
  const double n = static_cast<double>(values.size());
  if (values.empty()) return res;

  // Bin k holds P(X = k) = p (1-p)^{k-1}; extend while the expected count
  // stays above the threshold, then merge the geometric tail.
  std::vector<double> expected;
  double tail = 1.0;
  for (int64_t k = 1;; ++k) {
    const double pk = success_p * std::pow(1.0 - success_p, static_cast<double>(k - 1));
    if (n * pk < min_expected) break;
    expected.push_back(n * pk);
    tail -= pk;
  }
  if (expected.empty()) throw std::invalid_argument("sample too small for GoF binning");
  expected.push_back(std::max(n * tail, 1e-12));

  std::vector<double> observed(expected.size(), 0.0);
  for (int64_t v : values) {
    if (v < 1) throw std::invalid_argument("geometric samples start at 1");
    const size_t k = std::min<size_t>(static_cast<size_t>(v - 1), expected.size() - 1);
    observed[k] += 1.0;
  }
  double stat = 0;
  for (size_t k = 0; k < expected.size(); ++k) {
    const double diff = observed[k] - expected[k];
    stat += diff * diff / expected[k];
  }
  res.stat = stat;
  res.bins = static_cast<int64_t>(expected.size());
  res.df = res.bins - 1;
  res.p_value = chi2_sf(stat, res.df);
  return res;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

MannWhitney mann_whitney_less(std::vector<double> a, std::vector<double> b) {
  MannWhitney mw;
  const size_t na = a.size(), nb = b.size();
  if (na == 0 || nb == 0) return mw;
  struct Entry {
    double v;
    bool from_a;
  };
  std::vector<Entry> all;
  all.reserve(na + nb);
  for (double v : a) all.push_back({v, true});
  for (double v : b) all.push_back({v, false});
  std::sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) { return x.v < y.v; });

  double rank_sum_a = 0, tie_term = 0;
  size_t i = 0;
  while (i < all.size()) {
    size_t j = i;
    while (j < all.size() && all[j].v == all[i].v) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    const double t = static_cast<double>(j - i);
    tie_term += t * (t * t - 1.0);
    for (size_t k = i; k < j; ++k)
      if (all[k].from_a) rank_sum_a += avg_rank;
    i = j;
  }
  const double dn_a = static_cast<double>(na), dn_b = static_cast<double>(nb);
  const double n_all = dn_a + dn_b;
  mw.u = rank_sum_a - dn_a * (dn_a + 1.0) / 2.0;
  const double mu = dn_a * dn_b / 2.0;
  const double sigma2 =
      dn_a * dn_b / 12.0 * (n_all + 1.0 - tie_term / (n_all * (n_all - 1.0)));
  if (sigma2 <= 0) return mw;
  mw.z = (mw.u - mu) / std::sqrt(sigma2);
  mw.p_less = normal_cdf(mw.z);  // small U => a tends to be smaller
  return mw;
}

void QuantileSketch::add(double v) {
  if (levels_.empty()) levels_.emplace_back();
  levels_[0].push_back(v);
  ++count_;
  if (levels_[0].size() >= k_) compact_level(0);
}

void QuantileSketch::compact_level(size_t level) {
  while (level < levels_.size() && levels_[level].size() >= k_) {
    auto& buf = levels_[level];
    std::sort(buf.begin(), buf.end());
    if (level + 1 >= levels_.size()) levels_.emplace_back();
    auto& up = levels_[level + 1];
    for (size_t i = 1; i < buf.size(); i += 2) up.push_back(buf[i]);
    // An odd leftover element stays at this level.
    const bool odd = buf.size() % 2 != 0;
    const double leftover = odd ? buf.front() : 0.0;
    buf.clear();
    if (odd) buf.push_back(leftover);
    ++level;
  }
}

void QuantileSketch::merge(const QuantileSketch& other) {
  if (levels_.size() < other.levels_.size()) levels_.resize(other.levels_.size());
  for (size_t l = 0; l < other.levels_.size(); ++l) {
    levels_[l].insert(levels_[l].end(), other.levels_[l].begin(), other.levels_[l].end());
  }
  count_ += other.count_;
  for (size_t l = 0; l < levels_.size(); ++l) compact_level(l);
}

double QuantileSketch::quantile(double q) const {
  struct W {
    double v;
    int64_t w;
  };
  std::vector<W> items;
  int64_t total = 0;
  for (size_t l = 0; l < levels_.size(); ++l) {
    const int64_t w = int64_t{1} << l;
    for (double v : levels_[l]) {
      items.push_back({v, w});
      total += w;
    }
  }
  if (items.empty()) return 0;
  std::sort(items.begin(), items.end(), [](const W& a, const W& b) { return a.v < b.v; });
  const double target = q * static_cast<double>(total);
  double acc = 0;
  for (const W& it : items) {
    acc += static_cast<double>(it.w);
    if (acc >= target) return it.v;
  }
  return items.back().v;
}

double QuantileSketch::rank_error_bound() const {
  double lost = 0;
  for (size_t l = 0; l + 1 < levels_.size(); ++l)
    lost += static_cast<double>(int64_t{1} << l) * static_cast<double>(k_) / 2.0;
  return count_ > 0 ? lost / static_cast<double>(count_) : 0.0;
}

}  // namespace fkhc
