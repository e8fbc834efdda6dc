#include "fkhc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "fkhc/bubbles.hpp"
#include "fkhc/continuum.hpp"
#include "fkhc/loops.hpp"
#include "fkhc/metrics.hpp"
#include "fkhc/parallel.hpp"
#include "fkhc/stats.hpp"

namespace fkhc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double ExperimentConfig::resolved_p() const {
  if (p.has_value() == q.has_value())
    throw ConfigError("give exactly one of --p / --q");
  const ModelParams m = p ? ModelParams::from_p(*p) : ModelParams::from_q(*q);
  return m.p;
}

void ExperimentConfig::validate() const {
  (void)resolved_p();
  if (samples < 1) throw ConfigError("--samples must be >= 1");
  if (cap < 64) throw ConfigError("--cap too small");
  for (int64_t n : n_values)
    if (n <= 0) throw ConfigError("--n values must be positive");
}

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  return percentile_sorted(v, 0.5);
}

struct RowSink {
  std::vector<std::string>* rows;
  template <class... Parts>
  void operator()(const Parts&... parts) {
    std::string row;
    bool first = true;
    auto app = [&](const auto& part) {
      if (!first) row += ',';
      first = false;
      if constexpr (std::is_same_v<std::decay_t<decltype(part)>, double>)
        row += format_double(part);
      else if constexpr (std::is_same_v<std::decay_t<decltype(part)>, bool>)
        row += part ? '1' : '0';
      else if constexpr (std::is_convertible_v<decltype(part), std::string>)
        row += part;
      else
        row += std::to_string(part);
    };
    (app(parts), ...);
    rows->push_back(std::move(row));
  }
};

ExperimentResult run_bm_scaling(const ExperimentConfig& cfg) {
  const double p = cfg.resolved_p();
  const int64_t n = cfg.n_values.empty() ? 10000 : cfg.n_values[0];
  struct Sample {
    int64_t h = 0, c = 0;
    bool ok = false;
  };
  std::vector<Sample> out(static_cast<size_t>(cfg.samples));
  parallel_for(cfg.samples, cfg.workers, [&](int64_t i) {
    WordWindow w(derive_seed(cfg.seed, static_cast<uint64_t>(i)), p);
    if (!resolve_f_kinds(w, 0, n - 1, cfg.cap)) return;
    const ContourPair hc = build_contour(w, 0, n - 1);
    out[static_cast<size_t>(i)] = {hc.h_at(n), hc.c_at(n), true};
  });

  ExperimentResult res;
  res.csv_header = "sample,seed,n,h_n,c_n,ok";
  RowSink sink{&res.rows};
  std::vector<double> hs, cs;
  for (int64_t i = 0; i < cfg.samples; ++i) {
    const Sample& s = out[static_cast<size_t>(i)];
    sink(i, derive_seed(cfg.seed, static_cast<uint64_t>(i)), n, s.h, s.c, s.ok);
    if (s.ok) {
      hs.push_back(static_cast<double>(s.h));
      cs.push_back(static_cast<double>(s.c));
    }
  }
  const double dn = static_cast<double>(n);
  const MeanVar vh = mean_var(hs), vc = mean_var(cs);
  res.summary = {{"n", n},
                 {"resolved", hs.size()},
                 {"var_h_over_n", vh.var / dn},
                 {"var_c_over_n", vc.var / dn},
                 {"cov_hc_over_n", covariance(hs, cs) / dn},
                 {"alpha", ModelParams::from_p(p).alpha}};
  res.discard_rate = 1.0 - static_cast<double>(hs.size()) / static_cast<double>(cfg.samples);
  return res;
}

ExperimentResult run_tau_geom(const ExperimentConfig& cfg) {
  const double p = cfg.resolved_p();
  std::vector<int64_t> taus(static_cast<size_t>(cfg.samples), -1);
  parallel_for(cfg.samples, cfg.workers, [&](int64_t i) {
    WordWindow w(derive_seed(cfg.seed, static_cast<uint64_t>(i)), p);
    const StrongPinchChain sc = strong_pinch_chain(w, 0, 1, cfg.cap, 100000);
    if (!sc.tau.empty()) taus[static_cast<size_t>(i)] = sc.tau[0];
  });

  ExperimentResult res;
  res.csv_header = "sample,seed,tau1,ok";
  RowSink sink{&res.rows};
  std::vector<int64_t> good;
  for (int64_t i = 0; i < cfg.samples; ++i) {
    const int64_t t = taus[static_cast<size_t>(i)];
    sink(i, derive_seed(cfg.seed, static_cast<uint64_t>(i)), t, t > 0);
    if (t > 0) good.push_back(t);
  }
  double mean = 0;
  for (int64_t t : good) mean += static_cast<double>(t);
  if (!good.empty()) mean /= static_cast<double>(good.size());
  const Chi2Result gof = good.size() > 100
                             ? chi2_geometric_gof(good, p / 8.0)
                             : Chi2Result{};
  res.summary = {{"resolved", good.size()},
                 {"mean_tau1", mean},
                 {"expected_mean", 8.0 / p},
                 {"chi2_stat", gof.stat},
                 {"chi2_df", gof.df},
                 {"chi2_p_value", gof.p_value},
                 {"success_p", p / 8.0}};
  res.discard_rate = 1.0 - static_cast<double>(good.size()) / static_cast<double>(cfg.samples);
  return res;
}

AlphaEstimate alpha_from_vectors(const std::vector<double>& dts,
                                 const std::vector<double>& dms,
                                 uint64_t master_seed, int n_bootstrap) {
  AlphaEstimate est;
  est.samples = static_cast<int64_t>(dts.size());
  if (est.samples == 0) return est;
  double st = 0, sm = 0;
  for (size_t i = 0; i < dts.size(); ++i) {
    st += dts[i];
    sm += dms[i];
  }
  est.mean_dt = st / static_cast<double>(est.samples);
  est.mean_dm = sm / static_cast<double>(est.samples);
  est.a_hat = st / sm;
  const uint64_t bseed = derive_seed(master_seed, 0xb00757u);
  std::vector<double> ratios;
  ratios.reserve(static_cast<size_t>(n_bootstrap));
  const size_t n = dts.size();
  for (int b = 0; b < n_bootstrap; ++b) {
    double rt = 0, rm = 0;
    for (size_t i = 0; i < n; ++i) {
      const size_t j = static_cast<size_t>(
          hash_at(bseed, static_cast<uint64_t>(b) * n + i) % n);
      rt += dts[j];
      rm += dms[j];
    }
    ratios.push_back(rt / rm);
  }
  std::sort(ratios.begin(), ratios.end());
  est.ci_lo = percentile_sorted(ratios, 0.025);
  est.ci_hi = percentile_sorted(ratios, 0.975);
  return est;
}

std::vector<RootBubbleSample> collect_bubbles(const ExperimentConfig& cfg, double p) {
  std::vector<RootBubbleSample> out(static_cast<size_t>(cfg.samples));
  parallel_for(cfg.samples, cfg.workers, [&](int64_t i) {
    out[static_cast<size_t>(i)] =
        root_bubble_sample(derive_seed(cfg.seed, static_cast<uint64_t>(i)), p, cfg.cap);
  });
  return out;
}

ExperimentResult run_alpha(const ExperimentConfig& cfg) {
  const double p = cfg.resolved_p();
  if (!(p > 0.5)) throw ConfigError("alpha experiment requires p > 1/2 (q > 4)");
  const auto samples = collect_bubbles(cfg, p);

  ExperimentResult res;
  res.csv_header = "sample,seed,d_tree,d_map,k,ok";
  RowSink sink{&res.rows};
  std::vector<double> dts, dms;
  for (int64_t i = 0; i < cfg.samples; ++i) {
    const auto& s = samples[static_cast<size_t>(i)];
    sink(i, derive_seed(cfg.seed, static_cast<uint64_t>(i)), s.d_tree, s.d_map,
         s.k_orders, s.ok);
    if (s.ok) {
      dts.push_back(static_cast<double>(s.d_tree));
      dms.push_back(static_cast<double>(s.d_map));
    }
  }
  const AlphaEstimate est = alpha_from_vectors(dts, dms, cfg.seed, 1000);
  res.summary = {{"a_hat", est.a_hat},       {"ci_lo", est.ci_lo},
                 {"ci_hi", est.ci_hi},       {"mean_d_tree", est.mean_dt},
                 {"mean_d_map", est.mean_dm}, {"resolved", est.samples}};
  res.discard_rate = 1.0 - static_cast<double>(est.samples) / static_cast<double>(cfg.samples);
  return res;
}

ExperimentResult run_k_identity(const ExperimentConfig& cfg) {
  const double p = cfg.resolved_p();
  const auto samples = collect_bubbles(cfg, p);

  ExperimentResult res;
  res.csv_header = "sample,seed,k,d_tree,identity,ok";
  RowSink sink{&res.rows};
  int64_t resolved = 0, violations = 0;
  for (int64_t i = 0; i < cfg.samples; ++i) {
    const auto& s = samples[static_cast<size_t>(i)];
    const bool id = s.ok && s.d_tree == s.k_orders;
    sink(i, derive_seed(cfg.seed, static_cast<uint64_t>(i)), s.k_orders, s.d_tree,
         id, s.ok);
    if (s.ok) {
      ++resolved;
      if (!id) ++violations;
    }
  }
  res.summary = {{"resolved", resolved}, {"violations", violations}};
  res.discard_rate = 1.0 - static_cast<double>(resolved) / static_cast<double>(cfg.samples);
  return res;
}

ExperimentResult run_loop_diam(const ExperimentConfig& cfg) {
  const double p = cfg.resolved_p();
  const std::vector<int64_t> ns = cfg.n_values.empty()
                                      ? std::vector<int64_t>{25, 50, 100, 200}
                                      : cfg.n_values;
  const int64_t n_max = *std::max_element(ns.begin(), ns.end());

  struct PerN {
    LoopBallStat stat;
  };
  std::vector<std::vector<LoopBallStat>> out(
      static_cast<size_t>(cfg.samples), std::vector<LoopBallStat>(ns.size()));

  parallel_for(cfg.samples, cfg.workers, [&](int64_t i) {
    WordWindow w(derive_seed(cfg.seed, static_cast<uint64_t>(i)), p);
    for (int64_t margin = 6; margin <= 24; margin *= 2) {
      const int64_t half = margin * n_max * n_max;
      if (half > cfg.cap / 2 || !w.ensure(-half, half)) break;
      const DecoratedMap m = build_map(w, w.lo(), w.hi());
      if (m.root < 0) break;
      const auto dist = map_distances(m, m.root);
      const auto loops = trace_loops(m);
      bool all_ok = true;
      for (size_t k = 0; k < ns.size(); ++k) {
        out[static_cast<size_t>(i)][k] = loop_ball_statistic(m, loops, dist, ns[k]);
        all_ok = all_ok && out[static_cast<size_t>(i)][k].ok;
      }
      if (all_ok) break;
    }
  });

  ExperimentResult res;
  res.csv_header = "sample,seed,n,num_loops,max_diam,statistic,ok";
  RowSink sink{&res.rows};
  std::map<int64_t, std::vector<double>> stats;
  int64_t total = 0, okc = 0;
  for (int64_t i = 0; i < cfg.samples; ++i)
    for (size_t k = 0; k < ns.size(); ++k) {
      const LoopBallStat& s = out[static_cast<size_t>(i)][k];
      sink(i, derive_seed(cfg.seed, static_cast<uint64_t>(i)), ns[k], s.loops_in_ball,
           s.max_diam, s.stat, s.ok);
      ++total;
      if (s.ok) {
        ++okc;
        stats[ns[k]].push_back(s.stat);
      }
    }
  nlohmann::json medians;
  for (auto& [n, v] : stats) medians[std::to_string(n)] = median_of(v);
  res.summary = {{"medians", medians}, {"resolved", okc}, {"total", total}};
  res.discard_rate = 1.0 - static_cast<double>(okc) / static_cast<double>(total);
  return res;
}

ExperimentResult run_metric_gap(const ExperimentConfig& cfg) {
  const double p = cfg.resolved_p();
  if (!(p > 0.5)) throw ConfigError("metric-gap requires p > 1/2 (q > 4)");
  const std::vector<int64_t> ns =
      cfg.n_values.empty() ? std::vector<int64_t>{50, 100, 200} : cfg.n_values;

  // Inner alpha estimate on a derived stream.
  const int64_t n_alpha = 4000;
  std::vector<double> dts, dms;
  {
    std::vector<RootBubbleSample> bs(static_cast<size_t>(n_alpha));
    const uint64_t aseed = derive_seed(cfg.seed, 0xa1fa);
    parallel_for(n_alpha, cfg.workers, [&](int64_t i) {
      bs[static_cast<size_t>(i)] =
          root_bubble_sample(derive_seed(aseed, static_cast<uint64_t>(i)), p, cfg.cap);
    });
    for (const auto& s : bs)
      if (s.ok) {
        dts.push_back(static_cast<double>(s.d_tree));
        dms.push_back(static_cast<double>(s.d_map));
      }
  }
  const AlphaEstimate est = alpha_from_vectors(dts, dms, cfg.seed, 400);

  std::vector<std::vector<MetricGapResult>> out(
      static_cast<size_t>(cfg.samples), std::vector<MetricGapResult>(ns.size()));
  parallel_for(cfg.samples, cfg.workers, [&](int64_t i) {
    for (size_t k = 0; k < ns.size(); ++k)
      out[static_cast<size_t>(i)][k] = metric_gap_sample(
          derive_seed(cfg.seed, static_cast<uint64_t>(i)), p, ns[k], cfg.r,
          cfg.eps, est.a_hat, cfg.cap);
  });

  ExperimentResult res;
  res.csv_header = "sample,seed,n,statistic,pairs,ok";
  RowSink sink{&res.rows};
  std::map<int64_t, std::vector<double>> stats;
  int64_t total = 0, okc = 0;
  for (int64_t i = 0; i < cfg.samples; ++i)
    for (size_t k = 0; k < ns.size(); ++k) {
      const auto& s = out[static_cast<size_t>(i)][k];
      sink(i, derive_seed(cfg.seed, static_cast<uint64_t>(i)), ns[k], s.stat,
           s.pairs, s.ok);
      ++total;
      if (s.ok) {
        ++okc;
        stats[ns[k]].push_back(s.stat);
      }
    }
  nlohmann::json medians;
  for (auto& [n, v] : stats) medians[std::to_string(n)] = median_of(v);
  res.summary = {{"medians", medians},
                 {"a_hat", est.a_hat},
                 {"alpha_ci", {est.ci_lo, est.ci_hi}},
                 {"resolved", okc},
                 {"total", total},
                 {"r", cfg.r},
                 {"eps", cfg.eps}};
  res.discard_rate = 1.0 - static_cast<double>(okc) / static_cast<double>(total);
  return res;
}

ExperimentResult run_tree_profile(const ExperimentConfig& cfg) {
  const double p = cfg.resolved_p();
  const int64_t n = cfg.n_values.empty() ? 100 : cfg.n_values[0];
  const int64_t n2 = n * n;
  const int64_t n_ref = 10 * cfg.samples;

  std::vector<double> fk(static_cast<size_t>(cfg.samples),
                         std::numeric_limits<double>::quiet_NaN());
  parallel_for(cfg.samples, cfg.workers, [&](int64_t i) {
    WordWindow w(derive_seed(cfg.seed, static_cast<uint64_t>(i)), p);
    if (!resolve_f_kinds(w, 0, n2 - 1, cfg.cap)) return;
    const ContourPair hc = build_contour(w, 0, n2 - 1);
    fk[static_cast<size_t>(i)] =
        static_cast<double>(tree_distance(hc, 0, n2)) / static_cast<double>(n);
  });

  // Reference law: L_1 - 2 min_{[0,1]} L for L = W/2, sampled exactly via
  // the reflection form of the joint law of (W_1, min W).
  const uint64_t rseed = derive_seed(cfg.seed, 0x0beef);
  std::vector<double> ref(static_cast<size_t>(n_ref));
  parallel_for(n_ref, cfg.workers, [&](int64_t i) {
    double g0, g1;
    gaussian_pair(rseed, static_cast<uint64_t>(2 * i), &g0, &g1);
    double u = uniform01(rseed, static_cast<uint64_t>(2 * i + 1));
    if (u <= 0) u = 0x1.0p-53;
    const double x = g0;
    const double y = 0.5 * (-x + std::sqrt(x * x - 2.0 * std::log(u)));
    ref[static_cast<size_t>(i)] = 0.5 * (x + 2.0 * y);
  });

  ExperimentResult res;
  res.csv_header = "stream,sample,seed,value,ok";
  RowSink sink{&res.rows};
  std::vector<double> fk_ok;
  for (int64_t i = 0; i < cfg.samples; ++i) {
    const double v = fk[static_cast<size_t>(i)];
    const bool ok = !std::isnan(v);
    sink(std::string("fk"), i, derive_seed(cfg.seed, static_cast<uint64_t>(i)),
         ok ? v : 0.0, ok);
    if (ok) fk_ok.push_back(v);
  }
  for (int64_t i = 0; i < n_ref; ++i)
    sink(std::string("ref"), i, rseed, ref[static_cast<size_t>(i)], true);

  const double ks = ks_statistic(fk_ok, ref);
  res.summary = {{"n", n},
                 {"ks_distance", ks},
                 {"fk_resolved", fk_ok.size()},
                 {"ref_samples", n_ref}};
  res.discard_rate =
      1.0 - static_cast<double>(fk_ok.size()) / static_cast<double>(cfg.samples);
  return res;
}

ExperimentResult run_ghp_tree(const ExperimentConfig& cfg) {
  const double p = cfg.resolved_p();
  const ModelParams params = ModelParams::from_p(p);
  const std::vector<int64_t> ns =
      cfg.n_values.empty() ? std::vector<int64_t>{50, 100, 200} : cfg.n_values;
  const double r = cfg.r;
  const double depth = r + 0.25;

  std::vector<std::vector<GhpTreeBound>> out(
      static_cast<size_t>(cfg.samples), std::vector<GhpTreeBound>(ns.size()));

  parallel_for(cfg.samples, cfg.workers, [&](int64_t i) {
    const uint64_t sseed = derive_seed(cfg.seed, static_cast<uint64_t>(i));
    for (size_t k = 0; k < ns.size(); ++k) {
      const int64_t n = ns[k];
      const int64_t n2 = n * n;
      const double step = 1.0 / static_cast<double>(n2);
      const double var_rate = (1.0 + params.alpha) / 4.0;
      WordWindow w(derive_seed(sseed, 2 * k), p);

      // Grow the discrete window until H dips below -(depth n) two-sided;
      // the ball preimage is then contained in the dip range.
      int64_t half = 4 * n2;
      int64_t hit_lo = 0, hit_hi = 0;
      const int32_t target =
          -static_cast<int32_t>(std::ceil(depth * static_cast<double>(n)));
      while (half <= cfg.cap / 2) {
        if (!w.ensure(-half, half)) break;
        if (!resolve_f_kinds(w, -half, half - 1, cfg.cap)) break;
        const ContourPair hc = build_contour(w, -half, half - 1);
        hit_hi = hit_lo = 0;
        for (int64_t t = 0; t <= half && hit_hi == 0; ++t)
          if (hc.h_at(t) <= target) hit_hi = t;
        for (int64_t t = 0; t >= -half && hit_lo == 0; --t)
          if (hc.h_at(t) <= target) hit_lo = t;
        if (hit_hi != 0 && hit_lo != 0) break;
        half *= 2;
      }
      if (hit_hi == 0 || hit_lo == 0) continue;

      const auto br0 =
          sample_brownian_until(derive_seed(sseed, 2 * k + 1), step, var_rate,
                                depth, 512.0);
      if (!br0) continue;
      const BallInterval br_ball = ball_interval(*br0, r);
      if (br_ball.truncated || br_ball.count == 0) continue;

      // Each grid must cover the other tree's ball range. The Brownian
      // path is counter-indexed, so regenerating with a larger horizon
      // extends the same path; the FK extension beyond its dips cannot
      // add ball points.
      const double fk_time_lo = static_cast<double>(hit_lo) * step;
      const double fk_time_hi = static_cast<double>(hit_hi) * step;
      const double br_horizon =
          std::max({br0->time_of(br0->size() - 1), -fk_time_lo, fk_time_hi}) +
          2.0 * step;
      const FunctionTree brownian = sample_brownian_tree(
          derive_seed(sseed, 2 * k + 1), step, br_horizon, var_rate);

      const int64_t t_lo =
          std::min(hit_lo, static_cast<int64_t>(br_ball.lo - br0->idx0) - 2);
      const int64_t t_hi =
          std::max(hit_hi, static_cast<int64_t>(br_ball.hi - br0->idx0) + 2);
      if (!w.ensure(t_lo, t_hi) || !resolve_f_kinds(w, t_lo, t_hi - 1, cfg.cap))
        continue;
      const ContourPair hc = build_contour(w, t_lo, t_hi - 1);
      const FunctionTree fk_tree = function_tree_from_contour(hc, n, t_lo, t_hi);

      out[static_cast<size_t>(i)][k] = ghp_tree_bound(fk_tree, brownian, r);
    }
  });

  ExperimentResult res;
  res.csv_header = "sample,seed,n,bound,sup_diff,measure_term,ok";
  RowSink sink{&res.rows};
  std::map<int64_t, std::vector<double>> per_n;
  int64_t total = 0, okc = 0;
  for (int64_t i = 0; i < cfg.samples; ++i)
    for (size_t k = 0; k < ns.size(); ++k) {
      const GhpTreeBound& b = out[static_cast<size_t>(i)][k];
      sink(i, derive_seed(cfg.seed, static_cast<uint64_t>(i)), ns[k], b.bound,
           b.sup_diff, b.measure_term, b.ok);
      ++total;
      if (b.ok) {
        ++okc;
        per_n[ns[k]].push_back(b.bound);
      }
    }

  nlohmann::json medians;
  for (auto& [n, v] : per_n) medians[std::to_string(n)] = median_of(v);
  nlohmann::json mw;
  if (ns.size() >= 2) {
    const int64_t n_small = *std::min_element(ns.begin(), ns.end());
    const int64_t n_large = *std::max_element(ns.begin(), ns.end());
    const MannWhitney m = mann_whitney_less(per_n[n_large], per_n[n_small]);
    mw = {{"n_small", n_small}, {"n_large", n_large}, {"u", m.u},
          {"z", m.z},           {"p_less", m.p_less}};
  }
  res.summary = {{"medians", medians}, {"mann_whitney", mw}, {"r", r},
                 {"resolved", okc},    {"total", total}};
  res.discard_rate = 1.0 - static_cast<double>(okc) / static_cast<double>(total);
  return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  if (cfg.name == "bm-scaling") res = run_bm_scaling(cfg);
  else if (cfg.name == "tau-geom") res = run_tau_geom(cfg);
  else if (cfg.name == "alpha") res = run_alpha(cfg);
  else if (cfg.name == "k-identity") res = run_k_identity(cfg);
  else if (cfg.name == "loop-diam") res = run_loop_diam(cfg);
  else if (cfg.name == "metric-gap") res = run_metric_gap(cfg);
  else if (cfg.name == "tree-profile") res = run_tree_profile(cfg);
  else if (cfg.name == "ghp-tree") res = run_ghp_tree(cfg);
  else throw ConfigError("unknown experiment: " + cfg.name);

  res.summary["experiment"] = cfg.name;
  res.summary["p"] = cfg.resolved_p();
  res.summary["seed"] = cfg.seed;
  res.summary["samples"] = cfg.samples;
  res.summary["cap"] = cfg.cap;
  res.summary["discard_rate"] = res.discard_rate;
  if (res.discard_rate > 0.5) {
    res.summary["warning"] = "cap-discard rate above 50%";
    res.exit_code = 3;
  }
  return res;
}

EnumReport enumerate_small(int64_t n, double q) {
  if (n < 1 || n > 4) throw ConfigError("enumerate supports 1 <= n <= 4");
  if (!(q > 0)) throw ConfigError("enumerate needs q > 0");
  EnumReport rep;
  rep.n = n;
  rep.q = q;
  const double sq = std::sqrt(q);

  const int64_t len = 2 * n;
  std::vector<Letter> word(static_cast<size_t>(len));
  std::map<std::string, EnumRow> rows;
  int64_t total = 1;
  for (int64_t i = 0; i < len; ++i) total *= 5;

  for (int64_t idx = 0; idx < total; ++idx) {
    int64_t x = idx;
    int64_t f_count = 0;
    for (int64_t i = 0; i < len; ++i) {
      word[static_cast<size_t>(i)] = static_cast<Letter>(x % 5);
      if (word[static_cast<size_t>(i)] == Letter::F) ++f_count;
      x /= 5;
    }
    if (!reduce(std::span<const Letter>(word)).empty()) continue;
    ++rep.reducible_words;
    const DecoratedMap m = build_map_cycle(word);
    const auto loops = trace_loops(m);
    const std::string code = canonical_code(m);
    auto [it, fresh] = rows.try_emplace(code);
    EnumRow& row = it->second;
    if (fresh) {
      row.code = code;
      row.example_word = format_word(word);
      row.f_count = f_count;
      row.loops = static_cast<int64_t>(loops.size());
      row.weight = std::pow(sq, static_cast<double>(row.loops));
    }
    ++row.multiplicity;
  }
  for (auto& [code, row] : rows) rep.rows.push_back(row);
  return rep;
}

std::string write_result_files(const ExperimentConfig& cfg, const ExperimentResult& res) {
  const std::string base = cfg.out.empty() ? cfg.name : cfg.out;
  const std::string csv_path = base + ".csv";
  {
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + csv_path);
    f << res.csv_header << '\n';
    for (const auto& row : res.rows) f << row << '\n';
  }
  {
    std::ofstream f(base + ".meta.json", std::ios::binary);
    f << res.summary.dump(2) << '\n';
  }
  return csv_path;
}

}  // namespace fkhc
