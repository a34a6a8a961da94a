#include <random>

#include "common.hpp"
#include "doctest.h"
#include "omegared/error.hpp"
#include "omegared/semantics.hpp"
#include "oracles.hpp"

using namespace omegared;
using testing::load;
using testing::load_as;

namespace {

LassoWord L(std::string_view s) { return LassoWord::parse(s); }

// Increments on a, decrements on b, no move on b at zero.
const char* kIncDec =
    "kind: buchi-counter\ncounters: 1\nrealtime: true\nalphabet: a b\nstates: q\ninitial: q\naccepting: q\n"
    "delta: q a [0] -> q [+1]\ndelta: q a [1] -> q [+1]\ndelta: q b [1] -> q [-1]\n";

LassoWord rerooted(const LassoWord& w) {
  Word u = w.spoke();
  u.insert(u.end(), w.cycle().begin(), w.cycle().end());
  return LassoWord(u, w.cycle());
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("simulate_bounded on automata") {
    const auto nfa = load("nfa_a.mach");
    const Alphabet ab = Alphabet::sigma();
    auto r = simulate_bounded(nfa, lasso_stream(L(";a"), ab), 10);
    CHECK(r.verdict.kind == VerdictKind::Unknown);
    CHECK(r.summary.accepting_visits == 10);
    CHECK(r.summary.alive_branches == 1);
    CHECK(r.summary.letters_consumed == 10);
    auto d = simulate_bounded(nfa, lasso_stream(L(";b"), ab), 1);
    CHECK(d.verdict == Verdict::rejected(1));
    auto c = simulate_bounded(parse_machine(kIncDec), lasso_stream(L("a;b"), ab), 10);
    CHECK(c.verdict == Verdict::rejected(3));
    CHECK(c.summary.letters_consumed == 2);
    CHECK(simulate_bounded(nfa, lasso_stream(L(";a"), ab), 0).verdict == Verdict::unknown(0));
  }

  TEST_CASE("lasso_member_nfa") {
    auto a = load_as<BuchiNfa>("nfa_a.mach");
    auto ab = load_as<BuchiNfa>("nfa_ab.mach");
    CHECK(lasso_member_nfa(a, L(";a")));
    CHECK_FALSE(lasso_member_nfa(a, L(";b")));
    CHECK(lasso_member_nfa(ab, L("a;ba")));
    CHECK_FALSE(lasso_member_nfa(ab, L(";ba")));
    CHECK_THROWS_AS(lasso_member_nfa(a, L(";c")), AlphabetMismatch);
  }

  TEST_CASE("empty_buchi_pushdown") {
    CHECK(empty_buchi_pushdown(load_as<CounterAutomaton>("empty.mach")).empty);
    auto all = empty_buchi_pushdown(load_as<CounterAutomaton>("all_abc.mach"));
    CHECK_FALSE(all.empty);
    auto anbn = load_as<CounterAutomaton>("anbn.mach");
    auto r = empty_buchi_pushdown(anbn);
    REQUIRE_FALSE(r.empty);
    REQUIRE(r.witness.has_value());
    CHECK(lasso_member_pushdown(anbn, *r.witness));
    auto pda = load_as<PushdownAutomaton>("pda_balanced.mach");
    auto p = empty_buchi_pushdown(pda);
    REQUIRE_FALSE(p.empty);
    CHECK(lasso_member_pushdown(pda, *p.witness));
  }

  TEST_CASE("lasso_member_pushdown") {
    auto anbn = load_as<CounterAutomaton>("anbn.mach");
    CHECK(lasso_member_pushdown(anbn, L("ab;c")));
    CHECK(lasso_member_pushdown(anbn, L("aaabbb;c")));
    CHECK_FALSE(lasso_member_pushdown(anbn, L("abb;c")));
    CHECK_FALSE(lasso_member_pushdown(anbn, L(";a")));
    auto pda = load_as<PushdownAutomaton>("pda_balanced.mach");
    CHECK(lasso_member_pushdown(pda, L(";ab")));
    CHECK(lasso_member_pushdown(pda, L("ab;aabb")));
    CHECK_FALSE(lasso_member_pushdown(pda, L(";aab")));
    CHECK(lasso_member_pushdown(pda, L(";a")));
    CHECK_FALSE(lasso_member_pushdown(pda, L(";b")));
    auto nfa = load_as<BuchiNfa>("nfa_ab.mach");
    auto cm = nfa_to_counter(nfa);
    for (auto w : {L(";ab"), L("a;b"), L("b;ab"), L(";a")}) {
      CHECK(lasso_member_pushdown(cm, w) == lasso_member_nfa(nfa, w));
    }
    CHECK_THROWS_AS(lasso_member(load("two_counter.mach"), L(";a")), UnsupportedMachine);
  }

  TEST_CASE("lasso_pair_member_two_tape") {
    auto id = load_as<TwoTapeAutomaton>("identity.mach");
    CHECK(lasso_pair_member_two_tape(id, L(";a"), L(";a")));
    CHECK_FALSE(lasso_pair_member_two_tape(id, L(";a"), L(";b")));
    CHECK(lasso_pair_member_two_tape(id, L("b;a"), L("b;a")));
    auto alt = load_as<TwoTapeAutomaton>("alternate.mach");
    CHECK(lasso_pair_member_two_tape(alt, L(";a"), L(";b")));
    CHECK_FALSE(lasso_pair_member_two_tape(alt, L(";a"), L(";a")));
    // tape 2 never advances: rejected whatever the words
    auto stall = load_as<TwoTapeAutomaton>("stall.mach");
    CHECK_FALSE(lasso_pair_member_two_tape(stall, L(";a"), L(";a")));
    CHECK_FALSE(lasso_pair_member_two_tape(stall, L(";a"), L(";b")));
  }

  TEST_CASE("tm_accepts_evidence") {
    const Alphabet ab = Alphabet::sigma();
    auto right = load_as<TuringMachine>("tm_right.mach");
    auto r = tm_accepts_evidence(right, lasso_stream(L(";a"), ab), 20);
    CHECK(r.verdict.kind == VerdictKind::Unknown);
    CHECK(r.summary.accepting_visits == 20);
    CHECK(r.summary.max_head == 21);
    CHECK(r.summary.oscillation_certificates == 0);
    auto none = load_as<TuringMachine>("tm_none.mach");
    CHECK(tm_accepts_evidence(none, lasso_stream(L(";ab"), ab), 1).verdict == Verdict::rejected(1));
    auto loop = load_as<TuringMachine>("tm_loop.mach");
    auto l = tm_accepts_evidence(loop, lasso_stream(L(";ab"), ab), 50);
    CHECK(l.verdict.kind == VerdictKind::Rejected);
    CHECK(l.summary.oscillation_certificates > 0);
  }

  TEST_CASE("property: nfa membership agrees with the oracle") {
    std::mt19937 rng(41);
    const Alphabet ab = Alphabet::sigma();
    const auto words = oracle::all_lassos(ab, 4);
    for (int round = 0; round < 60; ++round) {
      auto m = oracle::random_nfa(rng, ab, 1 + rng() % 4, 0.3);
      for (const auto& w : words) {
        CAPTURE(w.to_string());
        CHECK(lasso_member_nfa(m, w) == oracle::nfa_member(m, w));
      }
    }
  }

  TEST_CASE("property: pushdown membership agrees with the oracle when it decides") {
    std::mt19937 rng(42);
    const Alphabet ab = Alphabet::sigma();
    const auto words = oracle::all_lassos(ab, 3);
    std::size_t decided = 0, total = 0;
    for (int round = 0; round < 30; ++round) {
      auto c = oracle::random_counter(rng, ab, 1 + rng() % 3, 0.25, round % 2 == 0);
      auto p = oracle::random_pda(rng, ab, 1 + rng() % 3, 0.2);
      for (const auto& w : words) {
        ++total;
        if (auto o = oracle::counter_member(c, w, 10)) {
          ++decided;
          CHECK(lasso_member_pushdown(c, w) == *o);
        }
        if (auto o = oracle::pda_member(p, w, 8)) CHECK(lasso_member_pushdown(p, w) == *o);
      }
    }
    CHECK(decided * 2 > total);
  }

  TEST_CASE("property: two-tape membership agrees with the oracle") {
    std::mt19937 rng(43);
    const Alphabet ab = Alphabet::sigma();
    const auto words = oracle::all_lassos(ab, 2);
    for (int round = 0; round < 40; ++round) {
      auto m = oracle::random_two_tape(rng, ab, ab, 1 + rng() % 3, 0.5);
      for (const auto& w1 : words) {
        for (const auto& w2 : words) CHECK(lasso_pair_member_two_tape(m, w1, w2) == oracle::two_tape_member(m, w1, w2));
      }
    }
  }

  TEST_CASE("property: re-rooting invariance") {
    std::mt19937 rng(44);
    const Alphabet ab = Alphabet::sigma();
    for (int round = 0; round < 60; ++round) {
      auto n = oracle::random_nfa(rng, ab, 3, 0.3);
      auto c = oracle::random_counter(rng, ab, 3, 0.25, true);
      auto w = oracle::random_lasso(rng, ab, 4);
      const LassoWord r = rerooted(w);
      CHECK(lasso_member_nfa(n, w) == lasso_member_nfa(n, r));
      CHECK(lasso_member_pushdown(c, w) == lasso_member_pushdown(c, r));
    }
  }

  TEST_CASE("property: emptiness witnesses are members") {
    std::mt19937 rng(45);
    const Alphabet ab = Alphabet::sigma();
    for (int round = 0; round < 60; ++round) {
      auto c = oracle::random_counter(rng, ab, 1 + rng() % 4, 0.25, round % 3 != 0);
      auto e = empty_buchi_pushdown(c);
      if (auto o = oracle::counter_nonempty(c, 10)) CHECK(e.empty == !*o);
      if (!e.empty) {
        REQUIRE(e.witness.has_value());
        CHECK(lasso_member_pushdown(c, *e.witness));
      }
    }
  }

  TEST_CASE("property: rejection is monotone in the horizon") {
    std::mt19937 rng(46);
    const Alphabet ab = Alphabet::sigma();
    for (int round = 0; round < 60; ++round) {
      MachineSpec m = oracle::random_counter(rng, ab, 1 + rng() % 3, 0.2, round % 2 == 0, 1 + round % 2);
      auto x = lasso_stream(oracle::random_lasso(rng, ab, 4), ab);
      auto r = simulate_bounded(m, x, 8);
      if (r.verdict.kind != VerdictKind::Rejected) continue;
      for (std::uint64_t h : {9, 12, 20}) {
        auto later = simulate_bounded(m, x, h);
        CHECK(later.verdict == r.verdict);
      }
    }
  }
}
