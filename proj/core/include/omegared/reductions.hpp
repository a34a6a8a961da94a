#pragma once

// Effective constructions between machine classes:
//
//   H1  Turing machine             -> Buchi 2-counter automaton
//   H2  2-counter over sigma        -> real-time 8-counter over sigma + {E}
//   H3  real-time k-counter over G  -> real-time 1-counter over G + {A, B, F, 0}
//   H'  real-time 1-counter over W  -> 2-tape automaton over (W + {C})^2
//
// plus the complement-pattern machines, union, interleave and the universal
// machine. Every construction copies its input's transition table into the
// output, so distinct inputs give distinct outputs.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegared/codings.hpp"
#include "omegared/machines.hpp"

namespace omegared {

// Single accepting state looping on every letter; k = 1, real-time.
CounterAutomaton universal_machine(const Alphabet& alphabet);

// Fresh initial state copying both initial states' outgoing transitions.
// Requires equal alphabets and equal real-time flags; k = max(k_a, k_b).
CounterAutomaton union_machines(const CounterAutomaton& a, const CounterAutomaton& b);

// Accepts x (*) y for x in L(a), y in L(b). NFA inputs count as 0 counters;
// two NFAs give an NFA, anything else a counter automaton with k_a + k_b
// counters.
MachineSpec interleave_machines(const MachineSpec& a, const MachineSpec& b);

// (universal machine over z's alphabet, z).
std::pair<CounterAutomaton, MachineSpec> inclusion_pair(const MachineSpec& z);

// Machines accepting the words that are not images of a coding:
//   Theta   real-time 1-counter over input + {E}, complement of theta_S(input^omega)
//   HKPhiK  real-time 1-counter over input + {A, B, F, 0}, complement of phi_K(h_K(input^omega))
//   PhiK    Buchi NFA over the coding's output, complement of phi_K(input^omega)
MachineSpec complement_pattern(const Coding& c);

// The part of the HKPhiK complement that only looks at phi_K-formatted words:
// on phi_K(y) it accepts iff y is not in h_K(gamma^omega). Words that are not
// phi_K-formatted may or may not be accepted.
CounterAutomaton hk_complement_on_phik(std::uint64_t K, const Alphabet& gamma);

CounterAutomaton tm_to_two_counter(const TuringMachine& m);
CounterAutomaton two_counter_to_rt8(const CounterAutomaton& b, std::uint64_t S);
CounterAutomaton rt8_to_rt1(const CounterAutomaton& a, std::uint64_t K);
// Product of the primes rt8_to_rt1 packs a's counters with. The simulation
// keeps up on every image when this is at most K.
std::uint64_t packing_modulus(const CounterAutomaton& a);
TwoTapeAutomaton one_counter_to_two_tape(const CounterAutomaton& c);

enum class Stage { H1, H2, H3, Hprime, Full };

std::string stage_name(Stage s);
// Accepts "H1", "H2", "H3", "Hprime" (or "H'"), "full".
Stage parse_stage(const std::string& name);

struct StageStats {
  std::string stage;
  std::string construction;  // short description of the construction applied
  std::size_t states = 0;
  std::size_t transitions = 0;
  unsigned counters = 0;  // 0 for non-counter outputs
  double elapsed_ms = 0;
};

struct ReductionReport {
  Stage stage = Stage::Full;
  std::uint64_t S = 0;
  std::uint64_t K = 0;
  std::optional<MachineSpec> output;
  // Full pipeline only: the real-time 1-counter machine that feeds H'.
  std::optional<CounterAutomaton> one_counter;
  std::vector<StageStats> stages;
  std::vector<std::string> notes;
};

// Runs one stage (or the full chain for Stage::Full) on a parsed machine.
// Throws UnsupportedMachine when the input kind does not fit the stage.
ReductionReport run_stage(Stage stage, const MachineSpec& input, std::uint64_t S, std::uint64_t K);

ReductionReport full_pipeline(const TuringMachine& m, std::uint64_t S, std::uint64_t K);

}  // namespace omegared
