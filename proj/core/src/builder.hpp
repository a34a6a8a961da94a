#pragma once

// Incremental construction of counter and two-tape machines for the reductions.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "omegared/error.hpp"
#include "omegared/machines.hpp"

namespace omegared::detail {

// Partial guard: bits outside `care` are left open and expanded on add().
struct Guard {
  std::uint16_t care = 0;
  std::uint16_t nonzero = 0;

  static Guard any() { return {}; }
  Guard zero(unsigned c) const { return {static_cast<std::uint16_t>(care | (1u << c)),
                                         static_cast<std::uint16_t>(nonzero & ~(1u << c))}; }
  Guard nz(unsigned c) const { return {static_cast<std::uint16_t>(care | (1u << c)),
                                       static_cast<std::uint16_t>(nonzero | (1u << c))}; }
};

inline std::uint16_t bit(unsigned c) { return static_cast<std::uint16_t>(1u << c); }

// State names are either listed one by one (kept in runs) or generated per
// block as stem + index.
class StateNamer {
 public:
  StateId named(std::string name) {
    pending_.push_back(std::move(name));
    return next_++;
  }

  StateId block(std::string stem, std::uint32_t count) {
    flush();
    StateId id = space_.add_generated(std::move(stem), count);
    next_ += count;
    return id;
  }

  StateId append(const StateSpace& other, const std::string& prefix) {
    flush();
    StateId id = space_.append(other, prefix);
    next_ += static_cast<StateId>(other.size());
    return id;
  }

  std::size_t size() const { return next_; }

  StateSpace take() {
    flush();
    return std::move(space_);
  }

 private:
  void flush() {
    if (!pending_.empty()) space_.add_names(std::move(pending_));
    pending_.clear();
  }

  StateSpace space_;
  std::vector<std::string> pending_;
  StateId next_ = 0;
};

class CounterBuilder {
 public:
  CounterBuilder(Alphabet alphabet, unsigned counters, bool realtime)
      : alphabet_(std::move(alphabet)), counters_(counters), realtime_(realtime) {}

  const Alphabet& alphabet() const { return alphabet_; }
  unsigned counters() const { return counters_; }

  StateId state(std::string name, bool accepting = false) {
    StateId s = names_.named(std::move(name));
    accepting_.push_back(accepting);
    return s;
  }

  StateId block(std::string stem, std::uint32_t count, bool accepting = false) {
    StateId s = names_.block(std::move(stem), count);
    accepting_.resize(accepting_.size() + count, accepting);
    return s;
  }

  // Copies a whole machine in; returns the offset of its state 0. Guard bits
  // of counters beyond the copied machine's k are fixed to zero.
  StateId embed(const CounterAutomaton& m, const std::string& prefix, unsigned counter_shift = 0) {
    StateId off = names_.append(m.control().states(), prefix);
    const auto& acc = m.control().accepting_set();
    accepting_.insert(accepting_.end(), acc.begin(), acc.end());
    for (const auto& t : m.transitions()) {
      delta_.push_back({t.from + off, t.to + off, t.letter, static_cast<std::uint16_t>(t.nonzero << counter_shift),
                        static_cast<std::uint16_t>(t.inc << counter_shift),
                        static_cast<std::uint16_t>(t.dec << counter_shift)});
    }
    return off;
  }

  // Copies a state space (names only, nothing accepting).
  StateId embed_states(const StateSpace& space, const std::string& prefix) {
    StateId off = names_.append(space, prefix);
    accepting_.resize(accepting_.size() + space.size(), false);
    return off;
  }

  void set_accepting(StateId s, bool v = true) { accepting_[s] = v; }
  bool accepting(StateId s) const { return accepting_[s]; }

  LetterId letter(std::string_view symbol) const {
    auto i = alphabet_.index_of(symbol);
    if (!i) throw MachineError("construction needs letter " + std::string(symbol));
    return static_cast<LetterId>(*i);
  }

  // One transition per completion of the open guard bits. A decremented
  // counter is always taken as non-zero.
  void add(StateId from, LetterId a, Guard g, StateId to, std::uint16_t inc = 0, std::uint16_t dec = 0) {
    const std::uint16_t all = static_cast<std::uint16_t>((1u << counters_) - 1);
    if (dec & g.care & ~g.nonzero) throw MachineError("construction decrements a counter guarded zero");
    g.care |= dec;
    g.nonzero |= dec;
    std::uint16_t open = static_cast<std::uint16_t>(all & ~g.care);
    std::uint16_t base = static_cast<std::uint16_t>(g.nonzero & g.care & all);
    // Enumerate subsets of `open`.
    std::uint16_t sub = 0;
    while (true) {
      delta_.push_back({from, to, a, static_cast<std::uint16_t>(base | sub), inc, dec});
      if (sub == open) break;
      sub = static_cast<std::uint16_t>((sub - open) & open);
    }
  }

  void add_exact(const CounterTransition& t) { delta_.push_back(t); }

  std::size_t num_states() const { return names_.size(); }
  std::size_t num_transitions() const { return delta_.size(); }
  const std::vector<CounterTransition>& transitions() const { return delta_; }

  CounterAutomaton build(StateId initial) && {
    return CounterAutomaton(std::move(alphabet_), counters_, realtime_, names_.take(), initial,
                            std::move(accepting_), std::move(delta_));
  }

 private:
  Alphabet alphabet_;
  unsigned counters_;
  bool realtime_;
  StateNamer names_;
  std::vector<bool> accepting_;
  std::vector<CounterTransition> delta_;
};

class TwoTapeBuilder {
 public:
  TwoTapeBuilder(Alphabet a1, Alphabet a2) : a1_(std::move(a1)), a2_(std::move(a2)) {}

  StateId state(std::string name, bool accepting = false) {
    StateId s = names_.named(std::move(name));
    accepting_.push_back(accepting);
    return s;
  }

  StateId block(std::string stem, std::uint32_t count, bool accepting = false) {
    StateId s = names_.block(std::move(stem), count);
    accepting_.resize(accepting_.size() + count, accepting);
    return s;
  }

  StateId embed_states(const StateSpace& space, const std::string& prefix) {
    StateId off = names_.append(space, prefix);
    accepting_.resize(accepting_.size() + space.size(), false);
    return off;
  }

  void set_accepting(StateId s, bool v = true) { accepting_[s] = v; }

  std::uint32_t word(const LetterWord& w) {
    auto [it, fresh] = ids_.try_emplace(w, static_cast<std::uint32_t>(words_.size()));
    if (fresh) words_.push_back(w);
    return it->second;
  }

  void add(StateId from, const LetterWord& u, const LetterWord& v, StateId to) {
    delta_.push_back({from, to, word(u), word(v)});
  }

  void add_ids(StateId from, std::uint32_t u, std::uint32_t v, StateId to) { delta_.push_back({from, to, u, v}); }

  std::size_t num_states() const { return names_.size(); }
  const std::vector<TwoTapeTransition>& transitions() const { return delta_; }

  TwoTapeAutomaton build(StateId initial) && {
    return TwoTapeAutomaton(std::move(a1_), std::move(a2_), names_.take(), initial, std::move(accepting_),
                            std::move(words_), std::move(delta_));
  }

 private:
  Alphabet a1_, a2_;
  StateNamer names_;
  std::vector<bool> accepting_;
  std::map<LetterWord, std::uint32_t> ids_;
  std::vector<LetterWord> words_;
  std::vector<TwoTapeTransition> delta_;
};

}  // namespace omegared::detail
