#include "omegared/machines.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>
#include <unordered_set>

#include "omegared/error.hpp"

namespace omegared {

bool valid_name(std::string_view name) {
  if (name.empty() || name == "->" || name == "@") return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == '"' || c == '[' || c == ']') return false;
  }
  return true;
}

StateSpace::StateSpace(std::vector<std::string> names) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (!valid_name(n)) throw MachineError("invalid state name '" + n + "'");
    if (!seen.insert(n).second) throw MachineError("duplicate state name '" + n + "'");
  }
  if (!names.empty()) {
    Block b;
    b.count = static_cast<std::uint32_t>(names.size());
    b.names = std::move(names);
    push_block(std::move(b));
  }
}

StateSpace StateSpace::generated(std::string stem, std::uint32_t count) {
  StateSpace s;
  s.add_generated(std::move(stem), count);
  return s;
}

void StateSpace::push_block(Block b) {
  b.start = static_cast<StateId>(size_);
  size_ += b.count;
  if (size_ > 0xFFFFFFF0u) throw MachineError("too many states");
  blocks_.push_back(std::move(b));
}

StateId StateSpace::add(std::string name) {
  if (!valid_name(name)) throw MachineError("invalid state name '" + name + "'");
  Block b;
  b.prefix = "";
  b.names = {std::move(name)};
  b.count = 1;
  StateId id = static_cast<StateId>(size_);
  push_block(std::move(b));
  return id;
}

StateId StateSpace::add_names(std::vector<std::string> names) {
  for (const auto& n : names) {
    if (!valid_name(n)) throw MachineError("invalid state name '" + n + "'");
  }
  StateId id = static_cast<StateId>(size_);
  if (names.empty()) return id;
  Block b;
  b.count = static_cast<std::uint32_t>(names.size());
  b.names = std::move(names);
  push_block(std::move(b));
  return id;
}

StateId StateSpace::add_generated(std::string stem, std::uint32_t count) {
  if (!valid_name(stem + "0")) throw MachineError("invalid state stem '" + stem + "'");
  Block b;
  b.stem = std::move(stem);
  b.count = count;
  StateId id = static_cast<StateId>(size_);
  if (count) push_block(std::move(b));
  return id;
}

StateId StateSpace::append(const StateSpace& other, const std::string& prefix) {
  StateId first = static_cast<StateId>(size_);
  for (const auto& ob : other.blocks_) {
    Block b = ob;
    b.prefix = prefix + ob.prefix;
    push_block(std::move(b));
  }
  return first;
}

const StateSpace::Block& StateSpace::block_of(StateId s) const {
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), s,
                             [](StateId v, const Block& b) { return v < b.start; });
  return *(it - 1);
}

std::string StateSpace::name(StateId s) const {
  if (s >= size_) throw MachineError("state id out of range");
  const Block& b = block_of(s);
  if (!b.names.empty()) return b.prefix + b.names[s - b.start];
  return b.prefix + b.stem + std::to_string(s - b.start);
}

std::vector<std::string> StateSpace::all_names() const {
  std::vector<std::string> out;
  out.reserve(size_);
  for (StateId s = 0; s < size_; ++s) out.push_back(name(s));
  return out;
}

bool operator==(const StateSpace& a, const StateSpace& b) {
  if (a.size_ != b.size_) return false;
  for (StateId s = 0; s < a.size_; ++s) {
    if (a.name(s) != b.name(s)) return false;
  }
  return true;
}

ControlCore::ControlCore(StateSpace states, StateId initial, std::vector<bool> accepting)
    : states_(std::move(states)), initial_(initial), accepting_(std::move(accepting)) {
  if (states_.size() == 0) throw MachineError("machine needs at least one state");
  if (initial_ >= states_.size()) throw MachineError("initial state is not declared");
  if (accepting_.size() != states_.size()) throw MachineError("accepting set size differs from state count");
}

std::size_t ControlCore::num_accepting() const { return std::count(accepting_.begin(), accepting_.end(), true); }

namespace {

void check_state(StateId s, std::size_t n, const char* what) {
  if (s >= n) throw MachineError(std::string(what) + " references an undeclared state");
}

void check_letter(LetterId a, const Alphabet& alphabet, bool lambda_ok) {
  if (a == kLambda) {
    if (!lambda_ok) throw MachineError("lambda transitions are not allowed here");
    return;
  }
  if (a >= alphabet.size()) throw MachineError("transition references an undeclared letter");
}

template <class T, class Key>
std::vector<T> sort_unique(std::vector<T> v, Key key) {
  std::sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

BuchiNfa::BuchiNfa(Alphabet alphabet, StateSpace states, StateId initial, std::vector<bool> accepting,
                   std::vector<NfaTransition> delta)
    : alphabet_(std::move(alphabet)), core_(std::move(states), initial, std::move(accepting)) {
  for (const auto& t : delta) {
    check_state(t.from, num_states(), "transition");
    check_state(t.to, num_states(), "transition");
    check_letter(t.letter, alphabet_, false);
  }
  delta = sort_unique(std::move(delta), [](const NfaTransition& t) { return std::tie(t.from, t.letter, t.to); });
  delta_ = TransitionTable<NfaTransition>(std::move(delta), num_states());
}

CounterAutomaton::CounterAutomaton(Alphabet alphabet, unsigned counters, bool realtime, StateSpace states,
                                   StateId initial, std::vector<bool> accepting,
                                   std::vector<CounterTransition> delta)
    : alphabet_(std::move(alphabet)),
      counters_(counters),
      realtime_(realtime),
      core_(std::move(states), initial, std::move(accepting)) {
  if (counters_ < 1 || counters_ > kMaxCounters) {
    throw MachineError("counter count must be between 1 and " + std::to_string(kMaxCounters));
  }
  const std::uint32_t mask = (1u << counters_) - 1;
  for (const auto& t : delta) {
    check_state(t.from, num_states(), "transition");
    check_state(t.to, num_states(), "transition");
    check_letter(t.letter, alphabet_, !realtime_);
    if ((t.nonzero | t.inc | t.dec) & ~mask) throw MachineError("transition touches a counter beyond k");
    if (t.inc & t.dec) throw MachineError("update vector entry is both +1 and -1");
    if (t.dec & ~t.nonzero) {
      throw MachineError("zero-guard constraint: a counter tested for zero may only be updated by 0 or +1");
    }
  }
  delta = sort_unique(std::move(delta), [](const CounterTransition& t) {
    return std::tie(t.from, t.letter, t.nonzero, t.to, t.inc, t.dec);
  });
  delta_ = TransitionTable<CounterTransition>(std::move(delta), num_states());
}

PushdownAutomaton::PushdownAutomaton(Alphabet alphabet, Alphabet stack, StateSpace states, StateId initial,
                                     std::vector<bool> accepting, std::vector<PdaTransition> delta)
    : alphabet_(std::move(alphabet)), stack_(std::move(stack)), core_(std::move(states), initial, std::move(accepting)) {
  for (const auto& t : delta) {
    check_state(t.from, num_states(), "transition");
    check_state(t.to, num_states(), "transition");
    check_letter(t.letter, alphabet_, true);
    if (t.top >= stack_.size()) throw MachineError("transition references an undeclared stack symbol");
    for (std::size_t i = 0; i < t.push.size(); ++i) {
      auto s = t.push[i];
      if (s >= stack_.size()) throw MachineError("transition pushes an undeclared stack symbol");
      bool last = i + 1 == t.push.size();
      if (s == kBottom && !(t.top == kBottom && last)) {
        throw MachineError("bottom symbol " + stack_[kBottom] + " may only be kept as the bottom");
      }
    }
    if (t.top == kBottom && (t.push.empty() || t.push.back() != kBottom)) {
      throw MachineError("replacement for the bottom symbol " + stack_[kBottom] + " must end with it");
    }
  }
  delta = sort_unique(std::move(delta), [](const PdaTransition& t) {
    return std::tie(t.from, t.letter, t.top, t.to, t.push);
  });
  delta_ = TransitionTable<PdaTransition>(std::move(delta), num_states());
}

TwoTapeAutomaton::TwoTapeAutomaton(Alphabet alphabet1, Alphabet alphabet2, StateSpace states, StateId initial,
                                   std::vector<bool> accepting, std::vector<LetterWord> words,
                                   std::vector<TwoTapeTransition> delta)
    : alphabet1_(std::move(alphabet1)), alphabet2_(std::move(alphabet2)), core_(std::move(states), initial, std::move(accepting)) {
  // Canonical word pool: sorted, unique; transitions are remapped onto it.
  std::vector<std::uint32_t> used(words.size(), 0);
  for (const auto& t : delta) {
    check_state(t.from, num_states(), "transition");
    check_state(t.to, num_states(), "transition");
    if (t.u >= words.size() || t.v >= words.size()) throw MachineError("transition references an unknown word");
    used[t.u] |= 1;
    used[t.v] |= 2;
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (auto a : words[i]) {
      if ((used[i] & 1) && a >= alphabet1_.size()) throw MachineError("tape-1 word uses an undeclared letter");
      if ((used[i] & 2) && a >= alphabet2_.size()) throw MachineError("tape-2 word uses an undeclared letter");
    }
  }
  std::vector<std::uint32_t> order(words.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return words[a] < words[b]; });
  std::vector<std::uint32_t> remap(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && words[order[i]] == words[order[i - 1]]) {
      remap[order[i]] = remap[order[i - 1]];
    } else {
      remap[order[i]] = static_cast<std::uint32_t>(words_.size());
      words_.push_back(words[order[i]]);
    }
  }
  for (auto& t : delta) {
    t.u = remap[t.u];
    t.v = remap[t.v];
  }
  delta = sort_unique(std::move(delta), [](const TwoTapeTransition& t) { return std::tie(t.from, t.u, t.v, t.to); });
  delta_ = TransitionTable<TwoTapeTransition>(std::move(delta), num_states());
}

bool operator==(const TwoTapeAutomaton& a, const TwoTapeAutomaton& b) {
  if (!(a.alphabet1_ == b.alphabet1_ && a.alphabet2_ == b.alphabet2_ && a.core_ == b.core_)) return false;
  if (a.delta_.size() != b.delta_.size()) return false;
  const auto& ta = a.delta_.all();
  const auto& tb = b.delta_.all();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].from != tb[i].from || ta[i].to != tb[i].to) return false;
    if (a.words_[ta[i].u] != b.words_[tb[i].u] || a.words_[ta[i].v] != b.words_[tb[i].v]) return false;
  }
  return true;
}

TuringMachine::TuringMachine(Alphabet input, Alphabet tape, TmAcceptance mode, StateSpace states, StateId initial,
                             std::vector<bool> accepting, std::vector<TmTransition> delta)
    : input_(std::move(input)), tape_(std::move(tape)), mode_(mode), core_(std::move(states), initial, std::move(accepting)) {
  for (const auto& s : input_.symbols()) {
    if (!tape_.contains(s)) throw MachineError("input symbol " + s + " is not in the tape alphabet");
  }
  for (const auto& t : delta) {
    check_state(t.from, num_states(), "transition");
    check_state(t.to, num_states(), "transition");
    if (t.read >= tape_.size() || t.write >= tape_.size()) {
      throw MachineError("transition references an undeclared tape symbol");
    }
  }
  delta = sort_unique(std::move(delta), [](const TmTransition& t) {
    return std::tie(t.from, t.read, t.to, t.write, t.move);
  });
  delta_ = TransitionTable<TmTransition>(std::move(delta), num_states());
}

std::string kind_name(const MachineSpec& m) {
  static const char* names[] = {"buchi-nfa", "buchi-counter", "buchi-pda", "two-tape", "turing"};
  return names[m.index()];
}

std::size_t num_states(const MachineSpec& m) {
  return std::visit([](const auto& x) { return x.num_states(); }, m);
}

std::size_t num_transitions(const MachineSpec& m) {
  return std::visit([](const auto& x) { return x.transitions().size(); }, m);
}

namespace {

bool prefix_comparable(const LetterWord& a, const LetterWord& b) {
  const auto n = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + n, b.begin());
}

}  // namespace

bool is_deterministic(const MachineSpec& spec) {
  if (const auto* m = std::get_if<BuchiNfa>(&spec)) {
    for (StateId s = 0; s < m->num_states(); ++s) {
      auto out = m->out(s);
      for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].letter == out[i - 1].letter) return false;
      }
    }
    return true;
  }
  if (const auto* m = std::get_if<CounterAutomaton>(&spec)) {
    for (StateId s = 0; s < m->num_states(); ++s) {
      auto out = m->out(s);
      for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
          if (out[i].nonzero != out[j].nonzero) continue;
          if (out[i].letter == out[j].letter || out[i].letter == kLambda || out[j].letter == kLambda) return false;
        }
      }
    }
    return true;
  }
  if (const auto* m = std::get_if<TwoTapeAutomaton>(&spec)) {
    for (StateId s = 0; s < m->num_states(); ++s) {
      auto out = m->out(s);
      for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
          if (prefix_comparable(m->word(out[i].u), m->word(out[j].u)) &&
              prefix_comparable(m->word(out[i].v), m->word(out[j].v))) {
            return false;
          }
        }
      }
    }
    return true;
  }
  throw UnsupportedMachine("is_deterministic is defined for NFAs, counter and two-tape automata, not " +
                           kind_name(spec));
}

bool is_counter_free(const CounterAutomaton& m) {
  return std::all_of(m.transitions().begin(), m.transitions().end(),
                     [](const CounterTransition& t) { return t.inc == 0 && t.dec == 0; });
}

BuchiNfa counter_free_to_nfa(const CounterAutomaton& m) {
  if (!is_counter_free(m)) throw UnsupportedMachine("machine updates its counters");
  if (!m.realtime()) throw UnsupportedMachine("machine has lambda transitions");
  std::vector<NfaTransition> delta;
  for (const auto& t : m.transitions()) {
    if (t.nonzero == 0) delta.push_back({t.from, t.to, t.letter});
  }
  return BuchiNfa(m.alphabet(), m.control().states(), m.initial(), m.control().accepting_set(), std::move(delta));
}

CounterAutomaton nfa_to_counter(const BuchiNfa& m) {
  std::vector<CounterTransition> delta;
  for (const auto& t : m.transitions()) delta.push_back({t.from, t.to, t.letter, 0, 0, 0});
  return CounterAutomaton(m.alphabet(), 1, true, m.control().states(), m.initial(), m.control().accepting_set(),
                          std::move(delta));
}

PushdownAutomaton counter_to_pushdown(const CounterAutomaton& m) {
  if (m.counters() != 1) throw UnsupportedMachine("only 1-counter machines have a {Z0, A} pushdown form");
  constexpr std::uint16_t Z0 = 0, A = 1;
  std::vector<PdaTransition> delta;
  for (const auto& t : m.transitions()) {
    PdaTransition p{t.from, t.to, t.letter, 0, {}};
    if (t.nonzero & 1) {
      p.top = A;
      if (t.inc & 1) p.push = {A, A};
      else if (t.dec & 1) p.push = {};
      else p.push = {A};
    } else {
      p.top = Z0;
      p.push = (t.inc & 1) ? std::vector<std::uint16_t>{A, Z0} : std::vector<std::uint16_t>{Z0};
    }
    delta.push_back(std::move(p));
  }
  return PushdownAutomaton(m.alphabet(), Alphabet({"Z0", "A"}), m.control().states(), m.initial(),
                           m.control().accepting_set(), std::move(delta));
}

}  // namespace omegared
