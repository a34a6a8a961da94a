#pragma once

// Brute-force reference procedures and seeded generators. Nothing here calls
// the library's decision procedures; the algorithms are deliberately different
// from the ones in semantics (matrix powers and explicit configuration search
// instead of phase graphs, saturation and SCCs).

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "omegared/codings.hpp"
#include "omegared/machines.hpp"
#include "omegared/words.hpp"

namespace omegared::oracle {

// u.v^omega in L(m). Runs are enumerated block by block: a word u v^omega is
// accepted iff some state q is reached after u v^i and q -> q on some v^j
// (j >= 1) through an accepting state. Both i and j are bounded by the number
// of states, so |Q| powers of the v-relation are enough.
bool nfa_member(const BuchiNfa& m, const LassoWord& w);

// Explicit configurations (state, position, counter) or (state, position,
// stack). A witness is a pumpable segment: from a reachable configuration back
// to the same state and position with the counter (stack) never dropping below
// its start and the same zero status (top symbol) at the end, visiting an
// accepting state and reading a letter. Such a segment repeats forever.
// Without a witness the answer is `false` only if the reachable configuration
// set stays below the cap (then every run lives in a finite graph); otherwise
// the result is unknown.
std::optional<bool> counter_member(const CounterAutomaton& m, const LassoWord& w, unsigned cap);
std::optional<bool> pda_member(const PushdownAutomaton& m, const LassoWord& w, unsigned cap);

// Same search with the input letter chosen freely.
std::optional<bool> counter_nonempty(const CounterAutomaton& m, unsigned cap);
std::optional<bool> pda_nonempty(const PushdownAutomaton& m, unsigned cap);

// (w1, w2) in R(m). Nodes are (state, folded position 1, folded position 2);
// for every pair of nodes the closure records which combinations of
// {tape 1 moved, tape 2 moved, accepting state entered} some non-empty walk
// realizes. Accepted iff a reachable node has a closed walk with all three.
bool two_tape_member(const TwoTapeAutomaton& m, const LassoWord& w1, const LassoWord& w2);

// Whether the lasso is phi_K(x) for some x over c.input, by checking every
// position of one joint period of the lasso and of the F-pattern.
bool phik_formatted(const Coding& c, const LassoWord& w);

// Smallest n <= limit such that w[1..n] is not an image prefix of c.
std::optional<std::size_t> first_non_image_prefix(const Coding& c, const LassoWord& w, std::size_t limit);

// Naive generator of c(x)[1..n] written straight from the defining formula
// with machine integers; only for parameters where the first n letters stay
// within 64-bit block lengths.
Word reference_prefix(const Coding& c, const LassoWord& x, std::size_t n);

// Letter of c(x) at a 1-based position, found by walking the blocks of the
// defining formula with big integers; never materializes a prefix.
Symbol reference_letter(const Coding& c, const LassoWord& x, const BigInt& pos);

// Position where x(m) is emitted, summed block by block.
BigInt predicted_emission(const Coding& c, std::uint64_t m);

// The x with w = x (*) y, and the y.
LassoWord odd_letters(const LassoWord& w);
LassoWord even_letters(const LassoWord& w);

// Explicit configuration-set run of m on x[1..n]. Every live configuration
// carries the number of accepting states its history entered (the maximum
// over merged histories). Returns the largest count over the configurations
// alive after n letters, or nullopt if every run died. Configurations with a
// counter above counter_cap, and lambda moves beyond closure_cap per letter,
// are dropped.
std::optional<std::uint64_t> max_accepting_visits(const CounterAutomaton& m, const Stream& x, std::uint64_t n,
                                                  std::uint32_t counter_cap = 1u << 20,
                                                  std::size_t closure_cap = 1u << 20);

// Generators.
using Rng = std::mt19937;

LassoWord random_lasso(Rng& rng, const Alphabet& a, std::size_t max_total);
// Every lasso u.v^omega over a with |u| + |v| <= max_total, deduplicated.
std::vector<LassoWord> all_lassos(const Alphabet& a, std::size_t max_total);

BuchiNfa random_nfa(Rng& rng, const Alphabet& a, std::size_t states, double density);
// 1-counter machine; realtime = false allows lambda transitions.
CounterAutomaton random_counter(Rng& rng, const Alphabet& a, std::size_t states, double density, bool realtime,
                                unsigned counters = 1);
PushdownAutomaton random_pda(Rng& rng, const Alphabet& a, std::size_t states, double density);
TwoTapeAutomaton random_two_tape(Rng& rng, const Alphabet& a1, const Alphabet& a2, std::size_t states,
                                 double density);
TuringMachine random_tm(Rng& rng, std::size_t states, TmAcceptance mode);

}  // namespace omegared::oracle
