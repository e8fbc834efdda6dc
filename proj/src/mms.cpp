#include "fkhc/mms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fkhc/rng.hpp"

namespace fkhc {

double MetricMeasureSpace::total_mass() const {
  double s = 0;
  for (double m : mass) s += m;
  return s;
}

void MetricMeasureSpace::validate() const {
  if (static_cast<size_t>(n) * n != dist.size() || mass.size() != static_cast<size_t>(n))
    throw std::invalid_argument("inconsistent space sizes");
  if (root < 0 || root >= n) throw std::invalid_argument("root out of range");
  constexpr double tol = 1e-12;
  for (int i = 0; i < n; ++i) {
    if (std::abs(d(i, i)) > tol) throw std::invalid_argument("d(i,i) != 0");
    if (mass[static_cast<size_t>(i)] < 0) throw std::invalid_argument("negative mass");
    for (int j = 0; j < n; ++j) {
      if (d(i, j) < -tol) throw std::invalid_argument("negative distance");
      if (std::abs(d(i, j) - d(j, i)) > tol) throw std::invalid_argument("asymmetric");
      for (int k = 0; k < n; ++k)
        if (d(i, j) > d(i, k) + d(k, j) + tol)
          throw std::invalid_argument("triangle inequality violated");
    }
  }
}

bool Correspondence::covers(const MetricMeasureSpace& x,
                            const MetricMeasureSpace& y) const {
  std::vector<uint8_t> cx(static_cast<size_t>(x.n), 0), cy(static_cast<size_t>(y.n), 0);
  bool roots = false;
  for (auto [i, j] : pairs) {
    if (i < 0 || i >= x.n || j < 0 || j >= y.n) return false;
    cx[static_cast<size_t>(i)] = 1;
    cy[static_cast<size_t>(j)] = 1;
    roots = roots || (i == x.root && j == y.root);
  }
  return roots && std::all_of(cx.begin(), cx.end(), [](uint8_t v) { return v; }) &&
         std::all_of(cy.begin(), cy.end(), [](uint8_t v) { return v; });
}

double distortion(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                  const Correspondence& r) {
  double dis = 0;
  for (auto [i1, j1] : r.pairs)
    for (auto [i2, j2] : r.pairs)
      dis = std::max(dis, std::abs(x.d(i1, i2) - y.d(j1, j2)));
  return dis;
}

double ghp_upper_bound(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                       const Correspondence& r, const std::vector<double>& coupling) {
  if (!r.covers(x, y)) throw std::invalid_argument("not a correspondence");
  if (coupling.size() != static_cast<size_t>(x.n) * y.n)
    throw std::invalid_argument("coupling shape mismatch");
  constexpr double tol = 1e-9;
  if (std::abs(x.total_mass() - y.total_mass()) > tol)
    throw std::invalid_argument("coupling form needs equal total masses");
  std::vector<double> row(static_cast<size_t>(x.n), 0), col(static_cast<size_t>(y.n), 0);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < y.n; ++j) {
      const double v = coupling[static_cast<size_t>(i) * y.n + j];
      if (v < -tol) throw std::invalid_argument("negative coupling mass");
      row[static_cast<size_t>(i)] += v;
      col[static_cast<size_t>(j)] += v;
    }
  for (int i = 0; i < x.n; ++i)
    if (std::abs(row[static_cast<size_t>(i)] - x.mass[static_cast<size_t>(i)]) > tol)
      throw std::invalid_argument("coupling marginal mismatch (X)");
  for (int j = 0; j < y.n; ++j)
    if (std::abs(col[static_cast<size_t>(j)] - y.mass[static_cast<size_t>(j)]) > tol)
      throw std::invalid_argument("coupling marginal mismatch (Y)");

  std::vector<uint8_t> in_r(static_cast<size_t>(x.n) * y.n, 0);
  for (auto [i, j] : r.pairs) in_r[static_cast<size_t>(i) * y.n + j] = 1;
  double off = 0;
  for (size_t k = 0; k < in_r.size(); ++k)
    if (!in_r[k]) off += coupling[k];
  return 0.5 * distortion(x, y, r) + off;
}

namespace {

// Max mass routable through the R-pairs subject to the two marginals:
// Edmonds-Karp on source -> X -> (R pairs) -> Y -> sink.
double max_mass_on_r(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                     const Correspondence& r) {
  const int n_nodes = x.n + y.n + 2;
  const int src = n_nodes - 2, sink = n_nodes - 1;
  std::vector<std::vector<double>> cap(static_cast<size_t>(n_nodes),
                                       std::vector<double>(static_cast<size_t>(n_nodes), 0));
  for (int i = 0; i < x.n; ++i) cap[src][i] = x.mass[static_cast<size_t>(i)];
  for (int j = 0; j < y.n; ++j) cap[static_cast<size_t>(x.n + j)][sink] = y.mass[static_cast<size_t>(j)];
  for (auto [i, j] : r.pairs)
    cap[static_cast<size_t>(i)][static_cast<size_t>(x.n + j)] =
        std::numeric_limits<double>::infinity();

  double flow = 0;
  while (true) {
    std::vector<int> prev(static_cast<size_t>(n_nodes), -1);
    std::vector<int> queue{src};
    prev[src] = src;
    for (size_t h = 0; h < queue.size() && prev[sink] < 0; ++h) {
      const int u = queue[h];
      for (int v = 0; v < n_nodes; ++v)
        if (prev[v] < 0 && cap[u][v] > 1e-15) {
          prev[v] = u;
          queue.push_back(v);
        }
    }
    if (prev[sink] < 0) break;
    double push = std::numeric_limits<double>::infinity();
    for (int v = sink; v != src; v = prev[v]) push = std::min(push, cap[prev[v]][v]);
    for (int v = sink; v != src; v = prev[v]) {
      cap[prev[v]][v] -= push;
      cap[v][prev[v]] += push;
    }
    flow += push;
  }
  return flow;
}

}  // namespace

double ghp_upper_bound_best_coupling(const MetricMeasureSpace& x,
                                     const MetricMeasureSpace& y,
                                     const Correspondence& r) {
  if (!r.covers(x, y)) throw std::invalid_argument("not a correspondence");
  const double total = x.total_mass();
  if (std::abs(total - y.total_mass()) > 1e-9)
    throw std::invalid_argument("coupling form needs equal total masses");
  const double off = total - max_mass_on_r(x, y, r);
  return 0.5 * distortion(x, y, r) + std::max(0.0, off);
}

double ghp_bound_optimized(const MetricMeasureSpace& x,
                           const MetricMeasureSpace& y, int candidates,
                           uint64_t seed) {
  // Greedy nearest-neighbour seed correspondence.
  Correspondence greedy;
  greedy.pairs.emplace_back(x.root, y.root);
  for (int i = 0; i < x.n; ++i) {
    int best = 0;
    for (int j = 1; j < y.n; ++j)
      if (std::abs(x.d(i, x.root) - y.d(j, y.root)) <
          std::abs(x.d(i, x.root) - y.d(best, y.root)))
        best = j;
    greedy.pairs.emplace_back(i, best);
  }
  for (int j = 0; j < y.n; ++j) {
    int best = 0;
    for (int i = 1; i < x.n; ++i)
      if (std::abs(x.d(i, x.root) - y.d(j, y.root)) <
          std::abs(x.d(best, x.root) - y.d(j, y.root)))
        best = i;
    greedy.pairs.emplace_back(best, j);
  }
  double best = ghp_upper_bound_best_coupling(x, y, greedy);

  uint64_t ctr = 0;
  for (int c = 0; c < candidates; ++c) {
    Correspondence r;
    r.pairs.emplace_back(x.root, y.root);
    for (int i = 0; i < x.n; ++i)
      r.pairs.emplace_back(i, static_cast<int>(hash_at(seed, ctr++) % static_cast<uint64_t>(y.n)));
    for (int j = 0; j < y.n; ++j)
      r.pairs.emplace_back(static_cast<int>(hash_at(seed, ctr++) % static_cast<uint64_t>(x.n)), j);
    best = std::min(best, ghp_upper_bound_best_coupling(x, y, r));
  }
  return best;
}

}  // namespace fkhc
