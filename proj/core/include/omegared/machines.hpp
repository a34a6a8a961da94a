#pragma once

// The five machine models: Buchi NFAs, Buchi k-counter automata, Buchi pushdown
// automata, 2-tape Buchi automata and Turing machines. All machines are immutable
// and validated on construction; transitions are kept sorted in canonical order
// and indexed by source state.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "omegared/words.hpp"

namespace omegared {

using StateId = std::uint32_t;
using LetterId = std::uint16_t;

// Letter id of the empty word on a transition.
inline constexpr LetterId kLambda = 0xFFFF;
inline constexpr unsigned kMaxCounters = 16;

// State names, stored as a sequence of blocks so that machines with millions of
// states do not need millions of strings. A block either lists its names or
// generates them as stem + index. Names of different blocks carry distinct,
// mutually prefix-free prefixes, which keeps every name unique.
class StateSpace {
 public:
  StateSpace() = default;
  // Explicit names; throws MachineError on duplicates or malformed names.
  explicit StateSpace(std::vector<std::string> names);
  // count states named stem0, stem1, ...
  static StateSpace generated(std::string stem, std::uint32_t count);

  std::size_t size() const { return size_; }
  std::string name(StateId s) const;

  // Appends the states of `other`, prefixing their names. Returns the id of
  // other's first state in this space.
  StateId append(const StateSpace& other, const std::string& prefix);
  // Appends a single named state (own block).
  StateId add(std::string name);
  // Appends explicitly named states as one block.
  StateId add_names(std::vector<std::string> names);
  StateId add_generated(std::string stem, std::uint32_t count);

  // Linear-time lookup; used by the parser through a hash index it builds itself.
  std::vector<std::string> all_names() const;

  friend bool operator==(const StateSpace& a, const StateSpace& b);

 private:
  struct Block {
    std::string prefix;
    std::vector<std::string> names;  // empty for generated blocks
    std::string stem;
    std::uint32_t count = 0;
    StateId start = 0;
  };
  const Block& block_of(StateId s) const;
  void push_block(Block b);

  std::vector<Block> blocks_;
  std::size_t size_ = 0;
};

// Validated name token: non-empty, no whitespace, no '#', not "->" or "@".
bool valid_name(std::string_view name);

// Common part of all finite-control machines.
class ControlCore {
 public:
  ControlCore() = default;
  ControlCore(StateSpace states, StateId initial, std::vector<bool> accepting);

  const StateSpace& states() const { return states_; }
  std::size_t num_states() const { return states_.size(); }
  StateId initial() const { return initial_; }
  bool accepting(StateId s) const { return accepting_[s]; }
  const std::vector<bool>& accepting_set() const { return accepting_; }
  std::size_t num_accepting() const;

  friend bool operator==(const ControlCore& a, const ControlCore& b) {
    return a.initial_ == b.initial_ && a.accepting_ == b.accepting_ && a.states_ == b.states_;
  }

 private:
  StateSpace states_;
  StateId initial_ = 0;
  std::vector<bool> accepting_;
};

// Transitions sorted by source with an offset index.
template <class T>
class TransitionTable {
 public:
  TransitionTable() = default;
  TransitionTable(std::vector<T> sorted, std::size_t num_states) : items_(std::move(sorted)) {
    offsets_.assign(num_states + 1, 0);
    for (const auto& t : items_) ++offsets_[t.from + 1];
    for (std::size_t i = 0; i < num_states; ++i) offsets_[i + 1] += offsets_[i];
  }
  std::span<const T> from(StateId s) const {
    return std::span<const T>(items_.data() + offsets_[s], offsets_[s + 1] - offsets_[s]);
  }
  const std::vector<T>& all() const { return items_; }
  std::size_t size() const { return items_.size(); }
  friend bool operator==(const TransitionTable& a, const TransitionTable& b) { return a.items_ == b.items_; }

 private:
  std::vector<T> items_;
  std::vector<std::uint64_t> offsets_;
};

struct NfaTransition {
  StateId from;
  StateId to;
  LetterId letter;
  friend bool operator==(const NfaTransition&, const NfaTransition&) = default;
};

class BuchiNfa {
 public:
  BuchiNfa(Alphabet alphabet, StateSpace states, StateId initial, std::vector<bool> accepting,
           std::vector<NfaTransition> delta);

  const Alphabet& alphabet() const { return alphabet_; }
  const ControlCore& control() const { return core_; }
  std::size_t num_states() const { return core_.num_states(); }
  StateId initial() const { return core_.initial(); }
  bool accepting(StateId s) const { return core_.accepting(s); }
  std::span<const NfaTransition> out(StateId s) const { return delta_.from(s); }
  const std::vector<NfaTransition>& transitions() const { return delta_.all(); }

  friend bool operator==(const BuchiNfa& a, const BuchiNfa& b) {
    return a.alphabet_ == b.alphabet_ && a.core_ == b.core_ && a.delta_ == b.delta_;
  }

 private:
  Alphabet alphabet_;
  ControlCore core_;
  TransitionTable<NfaTransition> delta_;
};

// Guard bit m set: counter m must be non-zero; clear: counter m must be zero.
// Update: inc bit m adds one to counter m, dec bit m subtracts one.
struct CounterTransition {
  StateId from;
  StateId to;
  LetterId letter;
  std::uint16_t nonzero;
  std::uint16_t inc;
  std::uint16_t dec;
  friend bool operator==(const CounterTransition&, const CounterTransition&) = default;
};

class CounterAutomaton {
 public:
  CounterAutomaton(Alphabet alphabet, unsigned counters, bool realtime, StateSpace states, StateId initial,
                   std::vector<bool> accepting, std::vector<CounterTransition> delta);

  const Alphabet& alphabet() const { return alphabet_; }
  unsigned counters() const { return counters_; }
  bool realtime() const { return realtime_; }
  const ControlCore& control() const { return core_; }
  std::size_t num_states() const { return core_.num_states(); }
  StateId initial() const { return core_.initial(); }
  bool accepting(StateId s) const { return core_.accepting(s); }
  std::span<const CounterTransition> out(StateId s) const { return delta_.from(s); }
  const std::vector<CounterTransition>& transitions() const { return delta_.all(); }

  friend bool operator==(const CounterAutomaton& a, const CounterAutomaton& b) {
    return a.alphabet_ == b.alphabet_ && a.counters_ == b.counters_ && a.realtime_ == b.realtime_ &&
           a.core_ == b.core_ && a.delta_ == b.delta_;
  }

 private:
  Alphabet alphabet_;
  unsigned counters_;
  bool realtime_;
  ControlCore core_;
  TransitionTable<CounterTransition> delta_;
};

// Pushed strings are written top first: pushing "AZ0" on top Z0 leaves A on top.
struct PdaTransition {
  StateId from;
  StateId to;
  LetterId letter;
  std::uint16_t top;
  std::vector<std::uint16_t> push;
  friend bool operator==(const PdaTransition&, const PdaTransition&) = default;
};

class PushdownAutomaton {
 public:
  // stack[0] is the bottom symbol Z0.
  PushdownAutomaton(Alphabet alphabet, Alphabet stack, StateSpace states, StateId initial,
                    std::vector<bool> accepting, std::vector<PdaTransition> delta);

  const Alphabet& alphabet() const { return alphabet_; }
  const Alphabet& stack() const { return stack_; }
  static constexpr std::uint16_t kBottom = 0;
  const ControlCore& control() const { return core_; }
  std::size_t num_states() const { return core_.num_states(); }
  StateId initial() const { return core_.initial(); }
  bool accepting(StateId s) const { return core_.accepting(s); }
  std::span<const PdaTransition> out(StateId s) const { return delta_.from(s); }
  const std::vector<PdaTransition>& transitions() const { return delta_.all(); }

  friend bool operator==(const PushdownAutomaton& a, const PushdownAutomaton& b) {
    return a.alphabet_ == b.alphabet_ && a.stack_ == b.stack_ && a.core_ == b.core_ && a.delta_ == b.delta_;
  }

 private:
  Alphabet alphabet_;
  Alphabet stack_;
  ControlCore core_;
  TransitionTable<PdaTransition> delta_;
};

// Finite words on the two tapes are interned; u and v index words().
struct TwoTapeTransition {
  StateId from;
  StateId to;
  std::uint32_t u;
  std::uint32_t v;
  friend bool operator==(const TwoTapeTransition&, const TwoTapeTransition&) = default;
};

using LetterWord = std::vector<LetterId>;

class TwoTapeAutomaton {
 public:
  // Transitions refer to `words` by index; words[0] need not be empty.
  TwoTapeAutomaton(Alphabet alphabet1, Alphabet alphabet2, StateSpace states, StateId initial,
                   std::vector<bool> accepting, std::vector<LetterWord> words,
                   std::vector<TwoTapeTransition> delta);

  const Alphabet& alphabet1() const { return alphabet1_; }
  const Alphabet& alphabet2() const { return alphabet2_; }
  const ControlCore& control() const { return core_; }
  std::size_t num_states() const { return core_.num_states(); }
  StateId initial() const { return core_.initial(); }
  bool accepting(StateId s) const { return core_.accepting(s); }
  std::span<const TwoTapeTransition> out(StateId s) const { return delta_.from(s); }
  const std::vector<TwoTapeTransition>& transitions() const { return delta_.all(); }
  const LetterWord& word(std::uint32_t id) const { return words_[id]; }
  const std::vector<LetterWord>& words() const { return words_; }

  // Structural equality compares the words behind the ids.
  friend bool operator==(const TwoTapeAutomaton& a, const TwoTapeAutomaton& b);

 private:
  Alphabet alphabet1_;
  Alphabet alphabet2_;
  ControlCore core_;
  std::vector<LetterWord> words_;
  TransitionTable<TwoTapeTransition> delta_;
};

enum class Move : std::int8_t { L = -1, S = 0, R = 1 };
enum class TmAcceptance { OnePrime, Buchi };

struct TmTransition {
  StateId from;
  std::uint16_t read;
  StateId to;
  std::uint16_t write;
  Move move;
  friend bool operator==(const TmTransition&, const TmTransition&) = default;
};

class TuringMachine {
 public:
  // The input alphabet must be a subset of the tape alphabet; symbols are tape ids.
  TuringMachine(Alphabet input, Alphabet tape, TmAcceptance mode, StateSpace states, StateId initial,
                std::vector<bool> accepting, std::vector<TmTransition> delta);

  const Alphabet& input() const { return input_; }
  const Alphabet& tape() const { return tape_; }
  TmAcceptance mode() const { return mode_; }
  const ControlCore& control() const { return core_; }
  std::size_t num_states() const { return core_.num_states(); }
  StateId initial() const { return core_.initial(); }
  bool accepting(StateId s) const { return core_.accepting(s); }
  std::span<const TmTransition> out(StateId s) const { return delta_.from(s); }
  const std::vector<TmTransition>& transitions() const { return delta_.all(); }

  friend bool operator==(const TuringMachine& a, const TuringMachine& b) {
    return a.input_ == b.input_ && a.tape_ == b.tape_ && a.mode_ == b.mode_ && a.core_ == b.core_ &&
           a.delta_ == b.delta_;
  }

 private:
  Alphabet input_;
  Alphabet tape_;
  TmAcceptance mode_;
  ControlCore core_;
  TransitionTable<TmTransition> delta_;
};

using MachineSpec = std::variant<BuchiNfa, CounterAutomaton, PushdownAutomaton, TwoTapeAutomaton, TuringMachine>;

// "buchi-nfa", "buchi-counter", "buchi-pda", "two-tape", "turing".
std::string kind_name(const MachineSpec& m);
std::size_t num_states(const MachineSpec& m);
std::size_t num_transitions(const MachineSpec& m);

// Throws UnsupportedMachine for pushdown automata and Turing machines.
bool is_deterministic(const MachineSpec& m);
bool is_counter_free(const CounterAutomaton& m);

// The NFA a real-time counter-free machine induces: counters stay at zero, so
// only transitions whose guard is all-zero can fire.
BuchiNfa counter_free_to_nfa(const CounterAutomaton& m);
// An NFA as a real-time 1-counter machine that never touches its counter.
CounterAutomaton nfa_to_counter(const BuchiNfa& m);
// The {Z0, A} pushdown form of a 1-counter machine: counter value c is A^c Z0.
PushdownAutomaton counter_to_pushdown(const CounterAutomaton& m);

// Text format.
MachineSpec parse_machine(std::string_view text);
std::string serialize_machine(const MachineSpec& m);
void write_machine(std::ostream& out, const MachineSpec& m);

}  // namespace omegared
