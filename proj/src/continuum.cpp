#include "fkhc/continuum.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace fkhc {

void FunctionTree::finalize() {
  const size_t n = vals.size();
  min_to_zero.assign(n, 0.0);
  const size_t z = static_cast<size_t>(idx0);
  double m = vals[z];
  for (size_t i = z + 1; i < n; ++i) {
    m = std::min(m, vals[i]);
    min_to_zero[i] = m;
  }
  min_to_zero[z] = vals[z];
  m = vals[z];
  for (size_t i = z; i-- > 0;) {
    m = std::min(m, vals[i]);
    min_to_zero[i] = m;
  }
}

double FunctionTree::d_g(int64_t i, int64_t j) const {
  if (i > j) std::swap(i, j);
  double m = vals[static_cast<size_t>(i)];
  for (int64_t k = i + 1; k <= j; ++k)
    m = std::min(m, vals[static_cast<size_t>(k)]);
  return vals[static_cast<size_t>(i)] + vals[static_cast<size_t>(j)] - 2.0 * m;
}

namespace {

// Increment k >= 0 belongs to the step from grid index idx0+k to idx0+k+1
// on the positive side; negative-side increments use an offset stream.
double increment(uint64_t seed, int64_t k, double sd) {
  double g0, g1;
  gaussian_pair(seed, static_cast<uint64_t>(k), &g0, &g1);
  return sd * g0;
}

FunctionTree assemble(uint64_t seed, double step, int64_t n_neg, int64_t n_pos,
                      double var_rate) {
  FunctionTree t;
  t.step = step;
  t.seed = seed;
  t.idx0 = n_neg;
  t.vals.assign(static_cast<size_t>(n_neg + n_pos + 1), 0.0);
  const double sd = std::sqrt(var_rate * step);
  double acc = 0.0;
  for (int64_t k = 0; k < n_pos; ++k) {
    acc += increment(seed, 2 * k, sd);
    t.vals[static_cast<size_t>(n_neg + 1 + k)] = acc;
  }
  acc = 0.0;
  for (int64_t k = 0; k < n_neg; ++k) {
    acc += increment(seed, 2 * k + 1, sd);
    t.vals[static_cast<size_t>(n_neg - 1 - k)] = acc;
  }
  t.finalize();
  return t;
}

}  // namespace

FunctionTree sample_brownian_tree(uint64_t seed, double step, double horizon,
                                  double var_rate) {
  if (!(step > 0) || !(horizon > 0))
    throw std::invalid_argument("brownian tree needs positive step and horizon");
  const int64_t n = static_cast<int64_t>(std::ceil(horizon / step));
  return assemble(seed, step, n, n, var_rate);
}

std::optional<FunctionTree> sample_brownian_until(uint64_t seed, double step,
                                                  double var_rate, double depth,
                                                  double max_horizon) {
  double h = std::max(16.0 * step, 1.0);
  while (true) {
    const FunctionTree t = sample_brownian_tree(seed, step, h, var_rate);
    const bool pos_hit =
        *std::min_element(t.vals.begin() + t.idx0, t.vals.end()) < -depth;
    const bool neg_hit =
        *std::min_element(t.vals.begin(), t.vals.begin() + t.idx0 + 1) < -depth;
    if (pos_hit && neg_hit) return t;
    if (h >= max_horizon) return std::nullopt;
    h = std::min(2.0 * h, max_horizon);
  }
}

FunctionTree function_tree_from_contour(const ContourPair& hc, int64_t n,
                                        int64_t t_lo, int64_t t_hi) {
  assert(t_lo <= 0 && 0 <= t_hi);
  assert(t_lo >= hc.lo && t_hi <= hc.hi + 1);
  FunctionTree t;
  t.step = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  t.idx0 = -t_lo;
  t.vals.resize(static_cast<size_t>(t_hi - t_lo + 1));
  const double inv = 1.0 / static_cast<double>(n);
  for (int64_t u = t_lo; u <= t_hi; ++u)
    t.vals[static_cast<size_t>(u - t_lo)] = inv * static_cast<double>(hc.h_at(u));
  t.finalize();
  return t;
}

BallInterval ball_interval(const FunctionTree& t, double r) {
  BallInterval b;
  const int64_t n = t.size();
  b.mask.assign(static_cast<size_t>(n), 0);
  b.lo = n;
  b.hi = -1;
  for (int64_t i = 0; i < n; ++i) {
    if (t.dist_root(i) <= r) {
      b.mask[static_cast<size_t>(i)] = 1;
      b.lo = std::min(b.lo, i);
      b.hi = std::max(b.hi, i);
      ++b.count;
    }
  }
  // The ball is certainly complete once g has dipped below -r on both
  // sides: past the dip, d(0,t) = g(t) - 2 min >= -min > r.
  const double head = *std::min_element(t.vals.begin(), t.vals.begin() + t.idx0 + 1);
  const double tail = *std::min_element(t.vals.begin() + t.idx0, t.vals.end());
  b.truncated = !(head < -r && tail < -r);
  return b;
}

GhpTreeBound ghp_tree_bound(const FunctionTree& a, const FunctionTree& b, double r) {
  GhpTreeBound out;
  if (a.step != b.step)
    throw std::invalid_argument("ghp_tree_bound needs matching grid steps");

  const BallInterval ba = ball_interval(a, r);
  const BallInterval bb = ball_interval(b, r);
  out.truncated = ba.truncated || bb.truncated;
  if (out.truncated) return out;
  if (ba.count == 0 || bb.count == 0) return out;

  // Shared-time indexing: index i in A and j in B refer to the same time
  // when i - a.idx0 == j - b.idx0.
  const int64_t shift = b.idx0 - a.idx0;
  const int64_t lo = std::min(ba.lo, bb.lo - shift);
  const int64_t hi = std::max(ba.hi, bb.hi - shift);
  if (lo < 0 || hi >= a.size() || lo + shift < 0 || hi + shift >= b.size())
    return out;  // grids do not cover each other's ball: resample wider

  double sup_diff = 0.0, spill_a = 0.0, spill_b = 0.0;
  int64_t sym_diff = 0;
  for (int64_t i = lo; i <= hi; ++i) {
    const bool in_a = ba.mask[static_cast<size_t>(i)] != 0;
    const bool in_b = bb.mask[static_cast<size_t>(i + shift)] != 0;
    if (!in_a && !in_b) continue;
    sup_diff = std::max(sup_diff,
                        std::abs(a.value(i) - b.value(i + shift)));
    if (in_a && !in_b) {
      ++sym_diff;
      spill_b = std::max(spill_b, b.dist_root(i + shift) - r);
    } else if (in_b && !in_a) {
      ++sym_diff;
      spill_a = std::max(spill_a, a.dist_root(i) - r);
    }
  }
  out.sup_diff = sup_diff;
  out.spill = spill_a + spill_b;
  out.measure_term = static_cast<double>(sym_diff) * a.step;
  out.bound = 0.5 * (4.0 * sup_diff + out.spill) + out.measure_term;
  out.ok = true;
  return out;
}

double local_ghp_integral(const std::vector<std::pair<double, double>>& r_bounds,
                          double truncation_R) {
  double acc = std::exp(-truncation_R);  // tail
  for (size_t i = 0; i + 1 < r_bounds.size(); ++i) {
    const auto [r0, b0] = r_bounds[i];
    const auto [r1, b1] = r_bounds[i + 1];
    const double f0 = std::exp(-r0) * std::min(1.0, b0);
    const double f1 = std::exp(-r1) * std::min(1.0, b1);
    acc += 0.5 * (f0 + f1) * (r1 - r0);
  }
  return acc;
}

void write_function_tree(const FunctionTree& t, const std::string& path) {
  nlohmann::json header{{"step", t.step},
                        {"idx0", t.idx0},
                        {"count", t.vals.size()},
                        {"seed", t.seed}};
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << header.dump() << '\n';
  f.write(reinterpret_cast<const char*>(t.vals.data()),
          static_cast<std::streamsize>(t.vals.size() * sizeof(double)));
}

FunctionTree read_function_tree(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(f, line);
  const auto header = nlohmann::json::parse(line);
  FunctionTree t;
  t.step = header.at("step").get<double>();
  t.idx0 = header.at("idx0").get<int64_t>();
  t.seed = header.at("seed").get<uint64_t>();
  t.vals.resize(header.at("count").get<size_t>());
  f.read(reinterpret_cast<char*>(t.vals.data()),
         static_cast<std::streamsize>(t.vals.size() * sizeof(double)));
  if (!f) throw std::runtime_error("truncated function tree file: " + path);
  t.finalize();
  return t;
}

}  // namespace fkhc
