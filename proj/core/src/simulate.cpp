// Bounded breadth-first simulation.
//
// The frontier is a set of configurations, deduplicated after every step, so
// runs that merge are explored once. Caps prune branches; any pruning turns a
// would-be Rejected into Unknown because a pruned branch might have survived.

#include <algorithm>
#include <unordered_set>

#include "omegared/error.hpp"
#include "omegared/semantics.hpp"

namespace omegared {

std::string Verdict::to_string() const {
  switch (kind) {
    case VerdictKind::Accepted: return "Accepted";
    case VerdictKind::Rejected: return "Rejected(" + std::to_string(horizon) + ")";
    case VerdictKind::Unknown: return "Unknown(" + std::to_string(horizon) + ")";
  }
  return "?";
}

namespace {

using Config = std::vector<std::uint64_t>;

struct ConfigHash {
  std::size_t operator()(const Config& c) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto v : c) h = (h ^ v) * 0x100000001b3ull;
    return static_cast<std::size_t>(h);
  }
};

// Ordered set with hash dedup; iteration follows insertion order.
class Frontier {
 public:
  bool insert(Config c) {
    if (!seen_.insert(c).second) return false;
    items_.push_back(std::move(c));
    return true;
  }
  const std::vector<Config>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  void truncate(std::size_t n) {
    if (items_.size() <= n) return;
    items_.resize(n);
    seen_.clear();
    seen_.insert(items_.begin(), items_.end());
  }

 private:
  std::vector<Config> items_;
  std::unordered_set<Config, ConfigHash> seen_;
};

void check_caps(const Caps& caps) {
  if (caps.counter_cap == 0 || caps.lambda_cap == 0 || caps.branch_cap == 0) throw Error("caps must be positive");
}

// Maps stream letters to machine letter ids; a letter outside the machine's
// alphabet is an error rather than a silent rejection.
class LetterMap {
 public:
  LetterMap(const Alphabet& machine, const Stream& x) : x_(x) {
    if (!x) throw Error("simulation needs an input stream");
    for (const auto& s : x->alphabet().symbols()) {
      auto id = machine.index_of(s);
      if (!id) throw AlphabetMismatch("input letter " + s + " is not in " + machine.to_string());
      ids_.push_back(static_cast<LetterId>(*id));
    }
  }
  LetterId operator()(std::uint64_t n) const { return ids_[*x_->alphabet().index_of(x_->letter(n))]; }

 private:
  Stream x_;
  std::vector<LetterId> ids_;
};

bool pruned(const RunSummary& s) { return s.counter_cap_hit || s.lambda_cap_hit || s.branch_cap_hit; }

SimulationResult finish(RunSummary s, std::uint64_t died_at, bool died) {
  SimulationResult r;
  if (died && !pruned(s)) r.verdict = Verdict::rejected(died_at);
  else r.verdict = Verdict::unknown(died ? died_at : s.horizon);
  r.summary = std::move(s);
  return r;
}

// One-letter step of an automaton with lambda moves. `successors(config,
// letter, out)` appends successor configurations; config[0] is the state.
template <class Machine, class Successors>
SimulationResult run_automaton(const Machine& m, const Stream& x, std::uint64_t horizon, const Caps& caps,
                               Successors successors) {
  check_caps(caps);
  LetterMap letters(m.alphabet(), x);
  RunSummary s;
  s.horizon = horizon;
  Frontier frontier;
  frontier.insert(successors.initial());
  std::vector<Config> out;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    // lambda closure, layer by layer
    Frontier closed;
    for (const auto& c : frontier.items()) closed.insert(c);
    std::vector<Config> layer = frontier.items();
    bool visited_accepting = false;
    for (std::uint64_t depth = 0; !layer.empty(); ++depth) {
      std::vector<Config> next;
      for (const auto& c : layer) {
        if (m.accepting(static_cast<StateId>(c[0]))) visited_accepting = true;
        out.clear();
        successors(c, kLambda, out, s);
        if (depth >= caps.lambda_cap) {
          if (!out.empty()) s.lambda_cap_hit = true;
          continue;
        }
        for (auto& d : out) {
          if (closed.insert(d)) next.push_back(std::move(d));
        }
      }
      layer = std::move(next);
    }
    const LetterId a = letters(n);
    Frontier stepped;
    for (const auto& c : closed.items()) {
      out.clear();
      successors(c, a, out, s);
      for (auto& d : out) stepped.insert(std::move(d));
    }
    if (stepped.size() > caps.branch_cap) {
      s.branch_cap_hit = true;
      stepped.truncate(caps.branch_cap);
    }
    if (stepped.empty()) {
      s.alive_branches = 0;
      if (visited_accepting) ++s.accepting_visits;
      return finish(std::move(s), n, true);
    }
    s.horizon_reached = n;
    s.letters_consumed = n;
    for (const auto& c : stepped.items()) {
      if (m.accepting(static_cast<StateId>(c[0]))) {
        visited_accepting = true;
        break;
      }
    }
    if (visited_accepting) ++s.accepting_visits;
    frontier = std::move(stepped);
  }
  s.alive_branches = frontier.size();
  return finish(std::move(s), 0, false);
}

struct CounterSteps {
  const CounterAutomaton& m;
  std::uint64_t cap;
  Config initial() const {
    Config c(1 + m.counters(), 0);
    c[0] = m.initial();
    return c;
  }
  void operator()(const Config& c, LetterId a, std::vector<Config>& out, RunSummary& s) const {
    std::uint16_t status = 0;
    for (unsigned i = 0; i < m.counters(); ++i) {
      if (c[1 + i] != 0) status |= static_cast<std::uint16_t>(1u << i);
    }
    for (const auto& t : m.out(static_cast<StateId>(c[0]))) {
      if (t.letter != a || t.nonzero != status) continue;
      Config d = c;
      d[0] = t.to;
      bool over = false;
      for (unsigned i = 0; i < m.counters(); ++i) {
        if (t.inc >> i & 1) over |= ++d[1 + i] > cap;
        if (t.dec >> i & 1) --d[1 + i];
      }
      if (over) {
        s.counter_cap_hit = true;
        continue;
      }
      out.push_back(std::move(d));
    }
  }
};

struct NfaSteps {
  const BuchiNfa& m;
  Config initial() const { return Config{m.initial()}; }
  void operator()(const Config& c, LetterId a, std::vector<Config>& out, RunSummary&) const {
    if (a == kLambda) return;
    for (const auto& t : m.out(static_cast<StateId>(c[0]))) {
      if (t.letter == a) out.push_back(Config{t.to});
    }
  }
};

// config = state, then the stack bottom first.
struct PdaSteps {
  const PushdownAutomaton& m;
  std::uint64_t cap;
  Config initial() const { return Config{m.initial(), PushdownAutomaton::kBottom}; }
  void operator()(const Config& c, LetterId a, std::vector<Config>& out, RunSummary& s) const {
    const auto top = static_cast<std::uint16_t>(c.back());
    for (const auto& t : m.out(static_cast<StateId>(c[0]))) {
      if (t.letter != a || t.top != top) continue;
      Config d(c.begin(), c.end() - 1);
      d[0] = t.to;
      for (auto it = t.push.rbegin(); it != t.push.rend(); ++it) d.push_back(*it);
      if (d.size() - 1 > cap) {
        s.counter_cap_hit = true;
        continue;
      }
      if (d.size() == 1) continue;  // bottom popped: no move possible
      out.push_back(std::move(d));
    }
  }
};

// Two-tape: a step is one transition. Branches whose reading would take the
// total number of letters read beyond the horizon are cut.
SimulationResult run_two_tape(const TwoTapeAutomaton& m, const Stream& x, const Stream& y, std::uint64_t horizon,
                              const Caps& caps) {
  check_caps(caps);
  if (!y) throw Error("two-tape simulation needs a second input stream");
  LetterMap l1(m.alphabet1(), x), l2(m.alphabet2(), y);
  RunSummary s;
  s.horizon = horizon;
  Frontier frontier;
  frontier.insert(Config{m.initial(), 0, 0});
  bool cut = false;
  auto reads = [](const LetterWord& w, const LetterMap& l, std::uint64_t pos) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (l(pos + 1 + i) != w[i]) return false;
    }
    return true;
  };
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    Frontier next;
    bool visited_accepting = false;
    for (const auto& c : frontier.items()) {
      for (const auto& t : m.out(static_cast<StateId>(c[0]))) {
        const auto& u = m.word(t.u);
        const auto& v = m.word(t.v);
        if (c[1] + u.size() + c[2] + v.size() > horizon) {
          cut = true;
          continue;
        }
        if (!reads(u, l1, c[1]) || !reads(v, l2, c[2])) continue;
        Config d{t.to, c[1] + u.size(), c[2] + v.size()};
        s.letters_consumed = std::max(s.letters_consumed, d[1] + d[2]);
        if (m.accepting(t.to)) visited_accepting = true;
        next.insert(std::move(d));
      }
    }
    if (next.size() > caps.branch_cap) {
      s.branch_cap_hit = true;
      next.truncate(caps.branch_cap);
    }
    if (next.empty()) {
      s.alive_branches = 0;
      if (cut) {
        SimulationResult r{Verdict::unknown(n), std::move(s)};
        return r;
      }
      return finish(std::move(s), n, true);
    }
    s.horizon_reached = n;
    if (visited_accepting) ++s.accepting_visits;
    frontier = std::move(next);
  }
  s.alive_branches = frontier.size();
  return finish(std::move(s), 0, false);
}

}  // namespace

// TM configuration: state, head, then (cell, symbol) pairs of the overlay in
// cell order. Only cells whose content differs from the input are stored.
SimulationResult tm_accepts_evidence(const TuringMachine& m, const Stream& x, std::uint64_t horizon,
                                     const Caps& caps) {
  check_caps(caps);
  if (!x) throw Error("simulation needs an input stream");
  std::vector<std::uint16_t> tape_of;
  for (const auto& sym : x->alphabet().symbols()) {
    auto id = m.tape().index_of(sym);
    if (!id) throw AlphabetMismatch("input letter " + sym + " is not in tape alphabet " + m.tape().to_string());
    tape_of.push_back(static_cast<std::uint16_t>(*id));
  }
  auto input = [&](std::uint64_t cell) { return tape_of[*x->alphabet().index_of(x->letter(cell))]; };
  auto read = [&](const Config& c, std::uint64_t cell) {
    for (std::size_t i = 2; i < c.size(); i += 2) {
      if (c[i] == cell) return static_cast<std::uint16_t>(c[i + 1]);
    }
    return input(cell);
  };
  auto write = [&](Config& c, std::uint64_t cell, std::uint16_t sym) {
    const bool original = input(cell) == sym;
    auto it = c.begin() + 2;
    while (it != c.end() && *it < cell) it += 2;
    if (it != c.end() && *it == cell) {
      if (original) c.erase(it, it + 2);
      else *(it + 1) = sym;
    } else if (!original) {
      it = c.insert(it, cell);
      c.insert(it + 1, sym);
    }
  };

  const bool one_prime = m.mode() == TmAcceptance::OnePrime;
  RunSummary s;
  s.horizon = horizon;
  auto visit = [&](const Config& c) {
    const auto head = c[1];
    s.max_head = std::max(s.max_head, head);
    if (s.cell_visits.size() < head) s.cell_visits.resize(head, 0);
    ++s.cell_visits[head - 1];
  };
  std::unordered_set<Config, ConfigHash> seen;
  Frontier frontier;
  if (one_prime && !m.accepting(m.initial())) {
    ++s.left_accepting_set;
    return finish(std::move(s), 1, true);
  }
  Config start{m.initial(), 1};
  seen.insert(start);
  visit(start);
  frontier.insert(start);
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    Frontier next;
    bool visited_accepting = false;
    for (const auto& c : frontier.items()) {
      const std::uint16_t sym = read(c, c[1]);
      for (const auto& t : m.out(static_cast<StateId>(c[0]))) {
        if (t.read != sym) continue;
        if (one_prime && !m.accepting(t.to)) {
          ++s.left_accepting_set;
          continue;
        }
        if (c[1] == 1 && t.move == Move::L) {
          ++s.left_edge_deaths;
          continue;
        }
        Config d = c;
        d[0] = t.to;
        write(d, c[1], t.write);
        d[1] = static_cast<std::uint64_t>(static_cast<std::int64_t>(c[1]) + static_cast<int>(t.move));
        if (!seen.insert(d).second) {
          ++s.oscillation_certificates;
          continue;
        }
        visit(d);
        if (m.accepting(t.to)) visited_accepting = true;
        next.insert(std::move(d));
      }
    }
    if (next.size() > caps.branch_cap) {
      s.branch_cap_hit = true;
      next.truncate(caps.branch_cap);
    }
    if (next.empty()) {
      s.alive_branches = 0;
      s.letters_consumed = s.max_head - 1;
      return finish(std::move(s), n, true);
    }
    s.horizon_reached = n;
    if (visited_accepting) ++s.accepting_visits;
    frontier = std::move(next);
  }
  s.alive_branches = frontier.size();
  s.letters_consumed = s.max_head - 1;
  return finish(std::move(s), 0, false);
}

SimulationResult simulate_bounded(const MachineSpec& spec, const Stream& x, std::uint64_t horizon, const Caps& caps,
                                  const Stream& second) {
  if (const auto* m = std::get_if<BuchiNfa>(&spec)) return run_automaton(*m, x, horizon, caps, NfaSteps{*m});
  if (const auto* m = std::get_if<CounterAutomaton>(&spec)) {
    return run_automaton(*m, x, horizon, caps, CounterSteps{*m, caps.counter_cap});
  }
  if (const auto* m = std::get_if<PushdownAutomaton>(&spec)) {
    return run_automaton(*m, x, horizon, caps, PdaSteps{*m, caps.counter_cap});
  }
  if (const auto* m = std::get_if<TwoTapeAutomaton>(&spec)) return run_two_tape(*m, x, second, horizon, caps);
  return tm_accepts_evidence(std::get<TuringMachine>(spec), x, horizon, caps);
}

}  // namespace omegared
