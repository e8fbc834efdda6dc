#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace fkhc {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string name;
  std::optional<double> p, q;  // exactly one
  std::vector<int64_t> n_values;
  int64_t samples = 1000;
  uint64_t seed = 1;
  int workers = 0;  // 0: FKHC_WORKERS env or hardware concurrency
  int64_t cap = 10'000'000;
  double r = 0.5;
  double eps = 0.25;
  std::string out;  // path prefix; empty writes CSV to stdout

  double resolved_p() const;
  void validate() const;
};

struct ExperimentResult {
  std::string csv_header;
  std::vector<std::string> rows;  // sorted; reproducible byte-for-byte
  nlohmann::json summary;
  double discard_rate = 0.0;
  int exit_code = 0;  // 3 when the cap-discard rate exceeds 1/2
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Exact small-n census of the finite bijection: every reducible word of
// length 2n, its canonical map code, loop count and sqrt(q)^loops weight.
struct EnumRow {
  std::string code;
  std::string example_word;
  int64_t multiplicity = 0;
  int64_t f_count = 0;
  int64_t loops = 0;
  double weight = 0;  // sqrt(q)^loops
};

struct EnumReport {
  int64_t n = 0;
  double q = 0;
  int64_t reducible_words = 0;
  std::vector<EnumRow> rows;  // sorted by code
};

EnumReport enumerate_small(int64_t n, double q);

// Writes rows + a JSON metadata sidecar; returns the CSV path.
std::string write_result_files(const ExperimentConfig& cfg, const ExperimentResult& res);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace fkhc
