#include "fkhc/word.hpp"

#include <algorithm>
#include <cassert>

#include "fkhc/kernels.hpp"

namespace fkhc {

namespace {

template <class Seq>
ReducedWord reduce_impl(const Seq& word, size_t n) {
  ReducedWord out;
  std::vector<int32_t> stack_a, stack_b;
  std::vector<uint8_t> consumed(n, 0);
  for (size_t i = 0; i < n; ++i) {
    const Letter x = static_cast<Letter>(word[i]);
    switch (x) {
      case Letter::a:
        stack_a.push_back(static_cast<int32_t>(i));
        break;
      case Letter::b:
        stack_b.push_back(static_cast<int32_t>(i));
        break;
      case Letter::A:
        if (!stack_a.empty()) {
          consumed[stack_a.back()] = 1;
          stack_a.pop_back();
        } else {
          out.orders.push_back(x);
        }
        break;
      case Letter::B:
        if (!stack_b.empty()) {
          consumed[stack_b.back()] = 1;
          stack_b.pop_back();
        } else {
          out.orders.push_back(x);
        }
        break;
      case Letter::F:
        if (stack_a.empty() && stack_b.empty()) {
          out.orders.push_back(x);
        } else if (stack_b.empty() ||
                   (!stack_a.empty() && stack_a.back() > stack_b.back())) {
          consumed[stack_a.back()] = 1;
          stack_a.pop_back();
        } else {
          consumed[stack_b.back()] = 1;
          stack_b.pop_back();
        }
        break;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    const Letter x = static_cast<Letter>(word[i]);
    if (is_burger(x) && !consumed[i]) out.burgers.push_back(x);
  }
  return out;
}

}  // namespace

ReducedWord reduce(std::span<const Letter> word) {
  return reduce_impl(word, word.size());
}

ReducedWord reduce(std::span<const uint8_t> word) {
  return reduce_impl(word, word.size());
}

WordWindow::WordWindow(uint64_t seed, double p, int64_t side_cap)
    : seed_(seed),
      params_(ModelParams::from_p(p)),
      thresholds_(LetterThresholds::from_p(p)),
      side_cap_(side_cap) {}

bool WordWindow::ensure(int64_t a, int64_t b) {
  assert(a <= b);
  if (lo_ <= a && b <= hi_) return true;
  if (a < -side_cap_ || b > side_cap_) return false;
  int64_t new_lo = lo_ > hi_ ? a : lo_;
  int64_t new_hi = lo_ > hi_ ? b : hi_;
  const int64_t cur = std::max<int64_t>(new_hi - new_lo + 1, 32);
  if (a < new_lo) new_lo = std::min(a, new_lo - cur);
  if (b > new_hi) new_hi = std::max(b, new_hi + cur);
  new_lo = std::max(new_lo, -side_cap_);
  new_hi = std::min(new_hi, side_cap_);
  rebuild(new_lo, new_hi);
  return true;
}

void WordWindow::rebuild(int64_t new_lo, int64_t new_hi) {
  const size_t n = static_cast<size_t>(new_hi - new_lo + 1);
  std::vector<uint8_t> fresh(n);
  if (lo_ <= hi_) {
    std::copy(letters_.begin(), letters_.end(),
              fresh.begin() + static_cast<size_t>(lo_ - new_lo));
    if (new_lo < lo_)
      kernels::fill_letters(seed_, new_lo, static_cast<size_t>(lo_ - new_lo),
                            thresholds_, fresh.data());
    if (new_hi > hi_)
      kernels::fill_letters(seed_, hi_ + 1, static_cast<size_t>(new_hi - hi_),
                            thresholds_,
                            fresh.data() + static_cast<size_t>(hi_ + 1 - new_lo));
  } else {
    kernels::fill_letters(seed_, new_lo, n, thresholds_, fresh.data());
  }
  letters_ = std::move(fresh);
  lo_ = new_lo;
  hi_ = new_hi;
  recompute_matches();
}

void WordWindow::recompute_matches() {
  const size_t n = letters_.size();
  match_.assign(n, -1);
  stack_a_.clear();
  stack_b_.clear();
  for (size_t i = 0; i < n; ++i) {
    switch (static_cast<Letter>(letters_[i])) {
      case Letter::a:
        stack_a_.push_back(static_cast<int32_t>(i));
        break;
      case Letter::b:
        stack_b_.push_back(static_cast<int32_t>(i));
        break;
      case Letter::A:
        if (!stack_a_.empty()) {
          match_[i] = stack_a_.back();
          match_[stack_a_.back()] = static_cast<int32_t>(i);
          stack_a_.pop_back();
        }
        break;
      case Letter::B:
        if (!stack_b_.empty()) {
          match_[i] = stack_b_.back();
          match_[stack_b_.back()] = static_cast<int32_t>(i);
          stack_b_.pop_back();
        }
        break;
      case Letter::F:
        if (!stack_a_.empty() || !stack_b_.empty()) {
          int32_t j;
          if (stack_b_.empty() ||
              (!stack_a_.empty() && stack_a_.back() > stack_b_.back())) {
            j = stack_a_.back();
            stack_a_.pop_back();
          } else {
            j = stack_b_.back();
            stack_b_.pop_back();
          }
          match_[i] = j;
          match_[j] = static_cast<int32_t>(i);
        }
        break;
    }
  }
}

WordWindow::MatchResult WordWindow::match_of(int64_t t, int64_t span_cap) {
  if (!ensure(t, t)) return {kUnresolved, false};
  while (true) {
    if (resolved(t)) return {match(t), true};
    // A stranded burger needs letters to the right, a stranded order to
    // the left. Orders never match forward, burgers never backward.
    const bool grow_right = is_burger(at(t));
    const int64_t grow = std::max<int64_t>(span(), 32);
    int64_t a = lo_, b = hi_;
    if (grow_right) {
      b = std::min(hi_ + grow, side_cap_);
      if (b == hi_) return {kUnresolved, false};
    } else {
      a = std::max(lo_ - grow, -side_cap_);
      if (a == lo_) return {kUnresolved, false};
    }
    if (b - a + 1 > span_cap) {
      // Clamp the last growth step to the allowed span.
      if (grow_right)
        b = a + span_cap - 1;
      else
        a = b - span_cap + 1;
      if (b <= hi_ && a >= lo_) return {kUnresolved, false};
    }
    ensure(a, b);
  }
}

bool WordWindow::is_reducible(int64_t s, int64_t t) {
  if (s > t) return true;
  if (!ensure(s, t))
    throw std::runtime_error("is_reducible: window cap exceeded");
  for (int64_t u = s; u <= t; ++u) {
    const int64_t m = match_[idx(u)];
    if (m < 0) return false;
    const int64_t mt = lo_ + m;
    if (mt < s || mt > t) return false;
  }
  return true;
}

std::optional<Interval> WordWindow::closure(int64_t a, int64_t b, int64_t span_cap) {
  if (!ensure(a, b)) return std::nullopt;
  int64_t s = a, t = b;
  std::vector<Interval> pending{{a, b}};
  while (!pending.empty()) {
    const Interval r = pending.back();
    pending.pop_back();
    for (int64_t u = r.lo; u <= r.hi; ++u) {
      const MatchResult mr = match_of(u, span_cap);
      if (!mr.resolved) return std::nullopt;
      if (mr.partner < s) {
        pending.push_back({mr.partner, s - 1});
        s = mr.partner;
      } else if (mr.partner > t) {
        pending.push_back({t + 1, mr.partner});
        t = mr.partner;
      }
      if (t - s + 1 > span_cap) return std::nullopt;
    }
  }
  return Interval{s, t};
}

std::vector<Letter> WordWindow::word(int64_t s, int64_t t) const {
  std::vector<Letter> w;
  w.reserve(static_cast<size_t>(t - s + 1));
  for (int64_t u = s; u <= t; ++u) w.push_back(at(u));
  return w;
}

}  // namespace fkhc
