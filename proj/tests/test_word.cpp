#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "fkhc/bijection.hpp"
#include "fkhc/word.hpp"
#include "oracles.hpp"

using namespace fkhc;

namespace {

ReducedWord reduce_str(const std::string& s) {
  const auto w = parse_word(s);
  return reduce(std::span<const Letter>(w));
}

}  // namespace

TEST_CASE("reduction examples") {
  CHECK(reduce_str("aA").empty());
  CHECK(reduce_str("abF").str() == "a");
  CHECK(reduce_str("aB").str() == "Ba");
  CHECK(reduce_str("abAB").empty());
  CHECK(reduce_str("AaA").str() == "A");
  CHECK(reduce_str("bbaF").str() == "bb");
  CHECK(reduce_str("").empty());
}

TEST_CASE("canonical form: orders before burgers, no cross-cancellation") {
  for (int len = 1; len <= 6; ++len) {
    int64_t total = 1;
    for (int i = 0; i < len; ++i) total *= 5;
    for (int64_t idx = 0; idx < total; ++idx) {
      const auto w = oracle::word_from_index(idx, len);
      const ReducedWord r = reduce(std::span<const Letter>(w));
      for (Letter x : r.orders) REQUIRE(is_order(x));
      for (Letter x : r.burgers) REQUIRE(is_burger(x));
      // No order in the block can consume any burger in the block: every
      // remaining order would have to reach a burger to its left, but the
      // burger block sits entirely to the right.
      // Cross-check against the naive leftmost rewriting oracle.
      REQUIRE(r == oracle::naive_reduce(w));
    }
  }
}

TEST_CASE("local confluence: any first rewrite leads to the same normal form") {
  for (int len = 2; len <= 6; ++len) {
    int64_t total = 1;
    for (int i = 0; i < len; ++i) total *= 5;
    for (int64_t idx = 0; idx < total; ++idx) {
      const auto w = oracle::word_from_index(idx, len);
      const ReducedWord expect = reduce(std::span<const Letter>(w));
      for (const auto& v : oracle::all_single_rewrites(w))
        REQUIRE(reduce(std::span<const Letter>(v)) == expect);
    }
  }
}

TEST_CASE("match examples") {
  const auto m1 = match_word(parse_word("abBA"));
  CHECK(m1[1] == 2);
  CHECK(m1[2] == 1);
  CHECK(m1[0] == 3);
  CHECK(m1[3] == 0);
  const auto m2 = match_word(parse_word("abAB"));
  CHECK(m2[0] == 2);
  CHECK(m2[1] == 3);
  // Matched pairs are always burger-then-order.
  const auto m3 = match_word(parse_word("FFabAB"));
  CHECK(m3[0] == -1);
  CHECK(m3[1] == -1);
}

TEST_CASE("window matches agree with the standalone pass and are involutive") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    WordWindow w(seed, 0.6);
    REQUIRE(w.ensure(-300, 300));
    const auto word = w.word(w.lo(), w.hi());
    const auto m = match_word(word);
    for (int64_t t = w.lo(); t <= w.hi(); ++t) {
      const size_t i = static_cast<size_t>(t - w.lo());
      if (m[i] >= 0) {
        REQUIRE(w.resolved(t));
        REQUIRE(w.match(t) == w.lo() + m[i]);
        REQUIRE(w.match(w.match(t)) == t);
        const Letter x = w.at(t), y = w.at(w.match(t));
        REQUIRE(is_burger(x) != is_burger(y));
      } else {
        REQUIRE(!w.resolved(t));
      }
    }
  }
}

TEST_CASE("locality: matches inside a subinterval are window-independent") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    WordWindow big(seed, 0.6);
    REQUIRE(big.ensure(-2000, 2000));
    const int64_t s = -97, t = 153;
    const auto local = match_word(big.word(s, t));
    for (int64_t u = s; u <= t; ++u) {
      const size_t i = static_cast<size_t>(u - s);
      const int64_t big_match = big.resolved(u) ? big.match(u) : WordWindow::kUnresolved;
      if (local[i] >= 0) {
        // A locally matched pair must be the global match.
        REQUIRE(big_match == s + local[i]);
      } else if (big_match != WordWindow::kUnresolved) {
        // Locally unmatched: the global partner lies outside [s,t].
        REQUIRE(!(s <= big_match && big_match <= t));
      }
    }
  }
}

TEST_CASE("determinism under different growth patterns") {
  WordWindow a(77, 0.6), b(77, 0.6);
  REQUIRE(a.ensure(-1000, 1000));
  REQUIRE(b.ensure(0, 3));
  REQUIRE(b.ensure(-50, 3));
  REQUIRE(b.ensure(-50, 700));
  REQUIRE(b.ensure(-1000, 1000));
  for (int64_t t = -1000; t <= 1000; ++t) REQUIRE(a.at(t) == b.at(t));
}

TEST_CASE("is_reducible matches emptiness of the reduced form") {
  WordWindow w(5, 0.6);
  REQUIRE(w.ensure(-40, 40));
  for (int64_t s = -20; s <= 0; ++s)
    for (int64_t t = s; t <= s + 16; ++t)
      CHECK(w.is_reducible(s, t) == w.reduce_range(s, t).empty());
}

TEST_CASE("closure is the minimal reducible superinterval") {
  int64_t found = 0;
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    WordWindow w(seed, 0.6);
    const auto c = w.closure(-1, 0, 1 << 18);
    if (!c) continue;
    ++found;
    REQUIRE(c->lo <= -1);
    REQUIRE(c->hi >= 0);
    REQUIRE(w.is_reducible(c->lo, c->hi));
    if (c->length() <= 600) {
      for (int64_t s = c->lo; s <= -1; ++s)
        for (int64_t t = 0; t <= c->hi; ++t) {
          if (s == c->lo && t == c->hi) continue;
          REQUIRE(!w.is_reducible(s, t));
        }
    }
  }
  REQUIRE(found >= 30);
}

TEST_CASE("match_of reports unresolved at the cap explicitly") {
  int64_t unresolved_seen = 0;
  for (uint64_t seed = 1; seed <= 200 && unresolved_seen == 0; ++seed) {
    WordWindow w(seed, 0.6);
    const auto r = w.match_of(0, 64);
    if (!r.resolved) {
      ++unresolved_seen;
      CHECK(r.partner == WordWindow::kUnresolved);
    }
  }
  CHECK(unresolved_seen > 0);
}

TEST_CASE("letters serialize as ASCII a,b,A,B,F") {
  CHECK(format_word(parse_word("abABF")) == "abABF");
  CHECK_THROWS_AS(parse_word("abX"), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::from_p(1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::from_p(-0.1), std::invalid_argument);
  const auto m = ModelParams::from_q(9.0);
  CHECK(m.p == doctest::Approx(0.6));
  CHECK(ModelParams::from_p(0.6).q == doctest::Approx(9.0));
  CHECK(ModelParams::from_p(0.25).alpha == doctest::Approx(0.5));
  CHECK(ModelParams::from_p(0.75).alpha == 0.0);
}
