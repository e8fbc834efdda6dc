#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fkhc/bijection.hpp"
#include "fkhc/experiments.hpp"
#include "fkhc/parallel.hpp"
#include "fkhc/serialization.hpp"
#include "fkhc/word.hpp"

namespace {

struct ModelOpt {
  std::optional<double> p, q;
  double resolve() const {
    if (p.has_value() == q.has_value())
      throw fkhc::ConfigError("give exactly one of --p / --q");
    return (p ? fkhc::ModelParams::from_p(*p) : fkhc::ModelParams::from_q(*q)).p;
  }
};

void add_model_flags(CLI::App* app, ModelOpt* m) {
  app->add_option("--p")
      ->description("theta parameter p in [0,1)")
      ->each([m](const std::string& s) { m->p = std::stod(s); });
  app->add_option("--q")
      ->description("FK parameter q (sqrt(q) = 2p/(1-p))")
      ->each([m](const std::string& s) { m->q = std::stod(s); });
}

int run(int argc, char** argv) {
  CLI::App app{"hamburger-cheeseburger FK map simulator"};
  app.require_subcommand(1);

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a word to its normal form");
  std::string word_arg;
  reduce_cmd->add_option("word", word_arg, "word over a,b,A,B,F (stdin if omitted)");

  // sample-word
  auto* sample_cmd = app.add_subcommand("sample-word", "print letters of a seeded window");
  ModelOpt sample_model;
  add_model_flags(sample_cmd, &sample_model);
  int64_t s_lo = 0, s_hi = 63;
  uint64_t s_seed = 1;
  sample_cmd->add_option("--lo", s_lo, "window start time");
  sample_cmd->add_option("--hi", s_hi, "window end time");
  sample_cmd->add_option("--seed", s_seed, "master seed");

  // build-map
  auto* map_cmd = app.add_subcommand("build-map", "emit a decorated map as JSON lines");
  ModelOpt map_model;
  add_model_flags(map_cmd, &map_model);
  std::string map_word, map_out;
  int64_t map_n = 256;
  uint64_t map_seed = 1;
  bool map_no_flips = false;
  map_cmd->add_option("--word", map_word, "explicit reducible word (finite bijection)");
  map_cmd->add_option("--n", map_n, "half-width of the sampled window");
  map_cmd->add_option("--seed", map_seed, "master seed");
  map_cmd->add_option("--out", map_out, "output path (stdout if omitted)");
  map_cmd->add_flag("--no-flips", map_no_flips, "keep the canonical tree decoration (M,T)");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "exact small-n census of the bijection");
  int64_t enum_n = 2;
  double enum_q = 9.0;
  std::string enum_out;
  enum_cmd->add_option("--n", enum_n, "edge count (1..4)");
  enum_cmd->add_option("--q", enum_q, "FK weight parameter");
  enum_cmd->add_option("--out", enum_out, "output path (stdout if omitted)");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run a seeded Monte Carlo experiment");
  fkhc::ExperimentConfig cfg;
  ModelOpt exp_model;
  exp_cmd->add_option("name", cfg.name,
                      "bm-scaling | tau-geom | alpha | k-identity | loop-diam | "
                      "metric-gap | tree-profile | ghp-tree")
      ->required();
  add_model_flags(exp_cmd, &exp_model);
  exp_cmd->add_option("--n", cfg.n_values, "size parameter(s)");
  exp_cmd->add_option("--samples", cfg.samples, "number of Monte Carlo samples");
  exp_cmd->add_option("--seed", cfg.seed, "master seed");
  exp_cmd->add_option("--workers", cfg.workers, "worker threads (0: FKHC_WORKERS or all cores)");
  exp_cmd->add_option("--cap", cfg.cap, "window span cap per search");
  exp_cmd->add_option("--out", cfg.out, "output path prefix (stdout if omitted)");
  exp_cmd->add_option("--r", cfg.r, "ball / window radius parameter");
  exp_cmd->add_option("--eps", cfg.eps, "grid spacing parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (reduce_cmd->parsed()) {
    std::string s = word_arg;
    if (s.empty()) std::getline(std::cin, s);
    const fkhc::ReducedWord r = fkhc::reduce(std::span<const fkhc::Letter>(fkhc::parse_word(s)));
    std::cout << (r.empty() ? "(empty)" : r.str()) << '\n';
    return 0;
  }

  if (sample_cmd->parsed()) {
    fkhc::WordWindow w(s_seed, sample_model.resolve());
    if (s_lo > s_hi || !w.ensure(s_lo, s_hi))
      throw fkhc::ConfigError("bad window bounds");
    std::string s;
    for (int64_t t = s_lo; t <= s_hi; ++t) s.push_back(fkhc::to_char(w.at(t)));
    std::cout << s << '\n';
    return 0;
  }

  if (map_cmd->parsed()) {
    fkhc::DecoratedMap m;
    if (!map_word.empty()) {
      m = fkhc::build_map_cycle(fkhc::parse_word(map_word), !map_no_flips);
    } else {
      fkhc::WordWindow w(map_seed, map_model.resolve());
      if (!w.ensure(-map_n, map_n)) throw fkhc::ConfigError("--n exceeds the window cap");
      m = fkhc::build_map(w, -map_n, map_n, !map_no_flips);
    }
    if (map_out.empty()) {
      fkhc::write_map_jsonl(m, std::cout);
    } else {
      std::ofstream f(map_out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + map_out);
      fkhc::write_map_jsonl(m, f);
    }
    return 0;
  }

  if (enum_cmd->parsed()) {
    const fkhc::EnumReport rep = fkhc::enumerate_small(enum_n, enum_q);
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!enum_out.empty()) {
      f.open(enum_out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + enum_out);
      os = &f;
    }
    *os << "code,example_word,multiplicity,f_count,loops,weight\n";
    for (const auto& row : rep.rows)
      *os << row.code << ',' << row.example_word << ',' << row.multiplicity << ','
          << row.f_count << ',' << row.loops << ',' << fkhc::format_double(row.weight)
          << '\n';
    std::cerr << "reducible words: " << rep.reducible_words
              << ", distinct maps: " << rep.rows.size() << '\n';
    return 0;
  }

  // experiment
  cfg.p = exp_model.p;
  cfg.q = exp_model.q;
  const fkhc::ExperimentResult res = fkhc::run_experiment(cfg);
  if (cfg.out.empty()) {
    std::cout << res.csv_header << '\n';
    for (const auto& row : res.rows) std::cout << row << '\n';
    std::cerr << res.summary.dump(2) << '\n';
  } else {
    const std::string csv = fkhc::write_result_files(cfg, res);
    std::cerr << "wrote " << csv << " (+.meta.json)\n";
    std::cerr << res.summary.dump(2) << '\n';
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fkhc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
