#pragma once

// Run semantics and decision procedures.
//
// Exact procedures work on lasso words u.v^omega: a run on a lasso only needs to
// know which position of u.v it is at, so positions past the spoke are folded
// modulo |v| ("phases"). Bounded simulation explores configuration sets
// breadth-first and never claims Buchi acceptance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omegared/machines.hpp"
#include "omegared/words.hpp"

namespace omegared {

enum class VerdictKind { Accepted, Rejected, Unknown };

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::uint64_t horizon = 0;  // for Unknown: the exhausted search horizon

  static Verdict accepted() { return {VerdictKind::Accepted, 0}; }
  static Verdict rejected(std::uint64_t at) { return {VerdictKind::Rejected, at}; }
  static Verdict unknown(std::uint64_t horizon) { return {VerdictKind::Unknown, horizon}; }
  std::string to_string() const;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct Caps {
  std::uint64_t counter_cap = 1u << 20;  // largest counter value / stack height kept
  std::uint64_t lambda_cap = 256;        // lambda moves explored per input letter
  std::uint64_t branch_cap = 1u << 18;   // live configurations kept per step
};

struct RunSummary {
  std::uint64_t horizon = 0;           // requested horizon
  std::uint64_t horizon_reached = 0;   // steps taken while some branch was alive
  std::uint64_t letters_consumed = 0;  // input letters read by the furthest branch
  std::uint64_t accepting_visits = 0;  // steps after which some live branch is accepting
  std::uint64_t alive_branches = 0;    // live configurations at the end
  bool counter_cap_hit = false;
  bool lambda_cap_hit = false;
  bool branch_cap_hit = false;
  // Turing machines only.
  std::uint64_t max_head = 0;
  std::vector<std::uint64_t> cell_visits;       // cell_visits[i]: configurations with head on cell i+1
  std::uint64_t oscillation_certificates = 0;   // branches cut because a configuration repeated
  std::uint64_t left_edge_deaths = 0;           // branches that moved L on cell 1
  std::uint64_t left_accepting_set = 0;         // one-prime branches that left F
};

struct SimulationResult {
  Verdict verdict;
  RunSummary summary;
};

// Breadth-first exploration of all runs for `horizon` steps. For automata a
// step is one input letter (with its lambda closure); for Turing machines a
// step is one move. Two-tape automata need `second` for tape 2 and count one
// step per transition. Rejected only when every branch died without pruning.
SimulationResult simulate_bounded(const MachineSpec& m, const Stream& x, std::uint64_t horizon,
                                  const Caps& caps = {}, const Stream& second = nullptr);

// Evidence for Turing machine acceptance. Never returns Accepted. Rejected when
// every branch dies (no move, L on cell 1, leaving F in one-prime mode) or
// repeats a configuration already explored, which certifies that its head stays
// in a bounded region.
SimulationResult tm_accepts_evidence(const TuringMachine& m, const Stream& x, std::uint64_t horizon,
                                     const Caps& caps = {});

bool lasso_member_nfa(const BuchiNfa& m, const LassoWord& w);

struct EmptinessResult {
  bool empty = true;
  std::optional<LassoWord> witness;  // set when non-empty
  std::size_t heads_explored = 0;
};

EmptinessResult empty_buchi_pushdown(const PushdownAutomaton& m);
// 1-counter machines are decided through their {Z0, A} pushdown form.
EmptinessResult empty_buchi_pushdown(const CounterAutomaton& m);

bool lasso_member_pushdown(const PushdownAutomaton& m, const LassoWord& w);
bool lasso_member_pushdown(const CounterAutomaton& m, const LassoWord& w);

bool lasso_pair_member_two_tape(const TwoTapeAutomaton& m, const LassoWord& w1, const LassoWord& w2);

// Exact membership for any kind that admits it (NFA, 1-counter, PDA).
// Throws UnsupportedMachine otherwise.
bool lasso_member(const MachineSpec& m, const LassoWord& w);

}  // namespace omegared
