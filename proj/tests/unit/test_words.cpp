#include <random>

#include "doctest.h"
#include "omegared/error.hpp"
#include "omegared/words.hpp"
#include "oracles.hpp"

using namespace omegared;

namespace {

Word w(std::string_view s) { return parse_word(s); }

LassoWord L(std::string_view s) { return LassoWord::parse(s); }

}  // namespace

TEST_SUITE("words") {
  TEST_CASE("alphabet invariants") {
    CHECK_THROWS_AS(Alphabet({}), Error);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), Error);
    CHECK_THROWS_AS(Alphabet({""}), Error);
    CHECK(Alphabet::sigma().symbols() == Word{"a", "b"});
    CHECK(Alphabet::gamma().symbols() == Word{"a", "b", "E"});
    CHECK(Alphabet::omega().symbols() == Word{"a", "b", "E", "A", "B", "F", "0"});
    CHECK(Alphabet::omega_prime().size() == 8);
    CHECK(Alphabet::omega_prime().contains("C"));
  }

  TEST_CASE("lasso canonical form") {
    CHECK_THROWS_AS(LassoWord({"a"}, {}), Error);
    CHECK(LassoWord({}, {"a", "b", "a", "b"}) == LassoWord({}, {"a", "b"}));
    CHECK(LassoWord({"a"}, {"b", "a"}) == LassoWord({}, {"a", "b"}));
    CHECK(L("a b;c") == LassoWord({"a", "b"}, {"c"}));
    CHECK(L(";a").to_string() == ";a");
  }

  TEST_CASE("lasso_letter") {
    CHECK(lasso_letter(L("ab;c"), 2) == "b");
    CHECK(lasso_letter(L("ab;c"), 5) == "c");
    CHECK(lasso_letter(L(";abc"), 7) == "a");
  }

  TEST_CASE("concat") {
    const Alphabet abc({"a", "b", "c"});
    CHECK(concat(Word{}, L(";a")) == L(";a"));
    CHECK(concat(w("ab"), L(";c")) == L("ab;c"));
    CHECK(concat(w("ba"), L("b;ab")).prefix(6) == w("bababa"));
    auto s = concat(w("ba"), lasso_stream(L("b;ab"), abc));
    CHECK(s->prefix(6) == w("bababa"));
    CHECK_THROWS_AS(concat(w("d"), lasso_stream(L(";a"), abc)), AlphabetMismatch);
  }

  TEST_CASE("interleave") {
    CHECK(interleave(L(";a"), L(";b")) == L(";ab"));
    CHECK(interleave(L(";ab"), L(";ab")).prefix(6) == w("aabbaa"));
    CHECK(interleave(L(";a"), L(";a")) == L(";a"));
    const Alphabet ab = Alphabet::sigma();
    CHECK(interleave(lasso_stream(L(";a"), ab), lasso_stream(L(";b"), ab))->prefix(4) == w("abab"));
  }

  TEST_CASE("row_decompose under Cantor pairing") {
    const Alphabet ab = Alphabet::sigma();
    CHECK(cantor_pair(1, 1) == 1);
    CHECK(cantor_pair(2, 1) == 2);
    CHECK(cantor_pair(1, 2) == 3);
    auto odd_a = function_stream(ab, [](std::uint64_t n) { return n % 2 == 1 ? 0 : 1; });
    CHECK(row_decompose(*odd_a, 1, 0).empty());
    CHECK(row_decompose(*lasso_stream(L(";a"), ab), 3, 5) == w("aaaaa"));
    // b(2, j) = 2, 5, 9, 14
    CHECK(row_decompose(*odd_a, 2, 4) == w("baab"));
  }

  TEST_CASE("property: prefix consistency and interleave inversion") {
    std::mt19937 rng(11);
    const Alphabet abc({"a", "b", "c"});
    for (int round = 0; round < 200; ++round) {
      auto x = oracle::random_lasso(rng, abc, 6), y = oracle::random_lasso(rng, abc, 6);
      auto xs = lasso_stream(x, abc), ys = lasso_stream(y, abc);
      auto z = interleave(xs, ys);
      const Word p40 = z->prefix(40), p17 = z->prefix(17);
      CHECK(std::equal(p17.begin(), p17.end(), p40.begin()));
      for (std::uint64_t n = 1; n <= 20; ++n) {
        CHECK(z->letter(2 * n - 1) == x.letter(n));
        CHECK(z->letter(2 * n) == y.letter(n));
      }
      auto zl = interleave(x, y);
      CHECK(zl.prefix(40) == p40);
      CHECK(oracle::odd_letters(zl) == x);
      CHECK(oracle::even_letters(zl) == y);
    }
  }

  TEST_CASE("property: concat associativity") {
    std::mt19937 rng(12);
    const Alphabet ab = Alphabet::sigma();
    for (int round = 0; round < 100; ++round) {
      auto t = oracle::random_lasso(rng, ab, 5);
      Word u = oracle::random_lasso(rng, ab, 4).prefix(rng() % 4);
      Word v = oracle::random_lasso(rng, ab, 4).prefix(rng() % 4);
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      CHECK(concat(u, concat(v, t)) == concat(uv, t));
      auto s = concat(u, concat(v, lasso_stream(t, ab)));
      CHECK(s->prefix(30) == concat(uv, t).prefix(30));
    }
  }

  TEST_CASE("lasso parsing with multi-letter symbols") {
    const Alphabet om = Alphabet::omega_prime();
    CHECK(LassoWord::parse("C 0;a", &om) == LassoWord({"C", "0"}, {"a"}));
    CHECK(parse_word("", nullptr).empty());
  }
}
