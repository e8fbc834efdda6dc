#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fkhc/letters.hpp"
#include "fkhc/rng.hpp"

namespace fkhc {

// Closed integer-time interval.
struct Interval {
  int64_t lo = 0;
  int64_t hi = -1;
  int64_t length() const { return hi - lo + 1; }
  bool contains(int64_t t) const { return lo <= t && t <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Canonical normal form of a word under the cancellation/commutation
// relations: the surviving orders (in arrival order) followed by the
// surviving burgers (in stack order).
struct ReducedWord {
  std::vector<Letter> orders;
  std::vector<Letter> burgers;
  bool empty() const { return orders.empty() && burgers.empty(); }
  size_t size() const { return orders.size() + burgers.size(); }
  std::string str() const {
    std::string s = format_word(orders);
    s += format_word(burgers);
    return s;
  }
  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
};

// LIFO stack engine: a/b push; A (resp. B) consumes the freshest
// unconsumed a (resp. b); F consumes the freshest burger of either kind.
ReducedWord reduce(std::span<const Letter> word);
ReducedWord reduce(std::span<const uint8_t> word);

// A lazily generated two-sided random word with its LIFO match table.
// Letters are a pure function of (seed, t, p); extending the window never
// changes previously generated letters. Single-writer: callers serialize
// access to one window, independent windows may run in parallel.
class WordWindow {
 public:
  static constexpr int64_t kDefaultSideCap = int64_t{1} << 26;

  WordWindow(uint64_t seed, double p, int64_t side_cap = kDefaultSideCap);

  uint64_t seed() const { return seed_; }
  double p() const { return params_.p; }
  const ModelParams& params() const { return params_; }
  int64_t lo() const { return lo_; }
  int64_t hi() const { return hi_; }
  int64_t span() const { return hi_ - lo_ + 1; }

  // Grows the window (geometric doubling per side) to cover [a,b].
  // Returns false when the per-side hard cap would be exceeded.
  bool ensure(int64_t a, int64_t b);

  Letter at(int64_t t) const { return static_cast<Letter>(letters_[idx(t)]); }

  // LIFO partner of t within the current window, or unresolved.
  bool resolved(int64_t t) const { return match_[idx(t)] >= 0; }
  int64_t match(int64_t t) const {
    const int32_t m = match_[idx(t)];
    return m < 0 ? kUnresolved : lo_ + m;
  }

  // For a resolved flexible order: the kind of burger it consumed.
  Letter f_kind(int64_t t) const { return at(match(t)); }

  struct MatchResult {
    int64_t partner = 0;
    bool resolved = false;
  };

  // Adaptive match query: extends the window toward the partner until
  // found or until the window span would exceed `span_cap` (or the hard
  // side cap). Unresolved-at-cap is reported explicitly, never silently.
  MatchResult match_of(int64_t t, int64_t span_cap);

  // True iff every time in [s,t] is matched within [s,t]. Depends only on
  // the letters of [s,t].
  bool is_reducible(int64_t s, int64_t t);

  // Smallest interval containing [a,b] all of whose times are matched
  // internally; equivalently the smallest reducible interval covering
  // [a,b]. nullopt when the search hits `span_cap`.
  std::optional<Interval> closure(int64_t a, int64_t b, int64_t span_cap);

  std::vector<Letter> word(int64_t s, int64_t t) const;
  std::span<const uint8_t> raw(int64_t s, int64_t t) const {
    return {letters_.data() + idx(s), static_cast<size_t>(t - s + 1)};
  }

  // Orders remaining in the reduced form of X(s..t); the K statistic uses
  // this on [0, t] for the root bubble.
  ReducedWord reduce_range(int64_t s, int64_t t) const { return fkhc::reduce(raw(s, t)); }

  static constexpr int64_t kUnresolved = INT64_MIN;

 private:
  size_t idx(int64_t t) const { return static_cast<size_t>(t - lo_); }
  void rebuild(int64_t new_lo, int64_t new_hi);
  void recompute_matches();

  uint64_t seed_;
  ModelParams params_;
  LetterThresholds thresholds_;
  int64_t side_cap_;
  int64_t lo_ = 0, hi_ = -1;
  std::vector<uint8_t> letters_;
  std::vector<int32_t> match_;
  std::vector<int32_t> stack_a_, stack_b_;  // scratch for the match pass
};

}  // namespace fkhc
