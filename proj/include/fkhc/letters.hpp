#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fkhc {

// The five-symbol inventory alphabet: two burger kinds, two specific
// orders, and the flexible order that accepts either burger.
enum class Letter : uint8_t {
  a = 0,  // hamburger
  b = 1,  // cheeseburger
  A = 2,  // hamburger order
  B = 3,  // cheeseburger order
  F = 4,  // flexible order
};

constexpr bool is_burger(Letter x) { return x == Letter::a || x == Letter::b; }
constexpr bool is_order(Letter x) { return !is_burger(x); }

constexpr char to_char(Letter x) {
  constexpr char tab[5] = {'a', 'b', 'A', 'B', 'F'};
  return tab[static_cast<uint8_t>(x)];
}

inline Letter letter_from_char(char c) {
  switch (c) {
    case 'a': return Letter::a;
    case 'b': return Letter::b;
    case 'A': return Letter::A;
    case 'B': return Letter::B;
    case 'F': return Letter::F;
    default: throw std::invalid_argument(std::string("not a letter: ") + c);
  }
}

inline std::vector<Letter> parse_word(std::string_view s) {
  std::vector<Letter> w;
  w.reserve(s.size());
  for (char c : s) w.push_back(letter_from_char(c));
  return w;
}

inline std::string format_word(const std::vector<Letter>& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w) s.push_back(to_char(x));
  return s;
}

// Model parameters. p is primary; q is derived through sqrt(q) = 2p/(1-p).
// alpha = max(1-2p, 0) is the correlation parameter of the scaling limit.
struct ModelParams {
  double p = 0.0;
  double q = 0.0;
  double alpha = 1.0;

  static ModelParams from_p(double p) {
    if (!(p >= 0.0 && p < 1.0))
      throw std::invalid_argument("p must lie in [0,1)");
    ModelParams m;
    m.p = p;
    const double sq = 2.0 * p / (1.0 - p);
    m.q = sq * sq;
    m.alpha = std::max(1.0 - 2.0 * p, 0.0);
    return m;
  }

  static ModelParams from_q(double q) {
    if (!(q >= 0.0) || std::isinf(q))
      throw std::invalid_argument("q must be a finite nonnegative real");
    const double sq = std::sqrt(q);
    return from_p(sq / (2.0 + sq));
  }

  // theta_p letter probabilities in enum order.
  double prob(Letter x) const {
    switch (x) {
      case Letter::a:
      case Letter::b: return 0.25;
      case Letter::A:
      case Letter::B: return (1.0 - p) / 4.0;
      case Letter::F: return p / 2.0;
    }
    return 0.0;
  }
};

}  // namespace fkhc
