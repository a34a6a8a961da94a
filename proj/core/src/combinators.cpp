#include <algorithm>

#include "builder.hpp"
#include "omegared/error.hpp"
#include "omegared/reductions.hpp"

namespace omegared {

using detail::CounterBuilder;
using detail::Guard;

CounterAutomaton universal_machine(const Alphabet& alphabet) {
  CounterBuilder b(alphabet, 1, true);
  StateId u = b.state("all", true);
  for (LetterId a = 0; a < alphabet.size(); ++a) b.add(u, a, Guard{}.zero(0), u);
  return std::move(b).build(u);
}

CounterAutomaton union_machines(const CounterAutomaton& a, const CounterAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch("union operands have different alphabets");
  if (a.realtime() != b.realtime()) throw UnsupportedMachine("union operands differ in real-time flag");
  CounterBuilder out(a.alphabet(), std::max(a.counters(), b.counters()), a.realtime());
  StateId init = out.state("init");
  StateId oa = out.embed(a, "l.");
  StateId ob = out.embed(b, "r.");
  for (auto [m, off] : {std::pair{&a, oa}, std::pair{&b, ob}}) {
    for (const auto& t : m->out(m->initial())) {
      out.add_exact({init, t.to + off, t.letter, t.nonzero, t.inc, t.dec});
    }
  }
  return std::move(out).build(init);
}

namespace {

// A component of the interleaving product: NFAs count as 0 counters.
struct Component {
  const Alphabet* alphabet;
  std::size_t states;
  StateId initial;
  const std::vector<bool>* accepting;
  unsigned counters;
  bool realtime;
  std::vector<CounterTransition> delta;
};

Component component(const MachineSpec& m) {
  if (const auto* n = std::get_if<BuchiNfa>(&m)) {
    Component c{&n->alphabet(), n->num_states(), n->initial(), &n->control().accepting_set(), 0, true, {}};
    for (const auto& t : n->transitions()) c.delta.push_back({t.from, t.to, t.letter, 0, 0, 0});
    return c;
  }
  if (const auto* k = std::get_if<CounterAutomaton>(&m)) {
    return {&k->alphabet(), k->num_states(), k->initial(), &k->control().accepting_set(), k->counters(),
            k->realtime(), k->transitions()};
  }
  throw UnsupportedMachine("interleave takes Buchi NFAs or counter automata, not " + kind_name(m));
}

}  // namespace

MachineSpec interleave_machines(const MachineSpec& ma, const MachineSpec& mb) {
  Component a = component(ma), b = component(mb);
  if (!(*a.alphabet == *b.alphabet)) throw AlphabetMismatch("interleave operands have different alphabets");
  const unsigned k = a.counters + b.counters;
  if (k > kMaxCounters) throw UnsupportedMachine("interleave needs more than 16 counters");

  // Product state (qa, qb, turn, flag). turn 0: a reads next; flag 0: waiting
  // for an accepting state of a, flag 1: of b.
  const std::size_t n = a.states * b.states * 4;
  if (n > 0xFFFFFFF0u) throw UnsupportedMachine("interleave product is too large");
  auto id = [&](StateId qa, StateId qb, unsigned turn, unsigned flag) {
    return static_cast<StateId>(((static_cast<std::size_t>(qa) * b.states + qb) * 2 + turn) * 2 + flag);
  };
  std::vector<bool> accepting(n, false);
  for (StateId qa = 0; qa < a.states; ++qa) {
    for (StateId qb = 0; qb < b.states; ++qb) {
      for (unsigned turn = 0; turn < 2; ++turn) accepting[id(qa, qb, turn, 0)] = (*a.accepting)[qa];
    }
  }
  auto next_flag = [&](StateId qa, StateId qb, unsigned flag) -> unsigned {
    if (flag == 0 && (*a.accepting)[qa]) return 1;
    if (flag == 1 && (*b.accepting)[qb]) return 0;
    return flag;
  };

  std::vector<CounterTransition> delta;
  for (StateId qa = 0; qa < a.states; ++qa) {
    for (StateId qb = 0; qb < b.states; ++qb) {
      for (unsigned flag = 0; flag < 2; ++flag) {
        unsigned nf = next_flag(qa, qb, flag);
        for (const auto& t : a.delta) {
          if (t.from != qa) continue;
          unsigned turn = t.letter == kLambda ? 0 : 1;
          delta.push_back({id(qa, qb, 0, flag), id(t.to, qb, turn, nf), t.letter, t.nonzero, t.inc, t.dec});
        }
        for (const auto& t : b.delta) {
          if (t.from != qb) continue;
          unsigned turn = t.letter == kLambda ? 1 : 0;
          auto sh = [&](std::uint16_t v) { return static_cast<std::uint16_t>(v << a.counters); };
          delta.push_back({id(qa, qb, 1, flag), id(qa, t.to, turn, nf), t.letter, sh(t.nonzero), sh(t.inc),
                           sh(t.dec)});
        }
      }
    }
  }
  StateSpace names = StateSpace::generated("p", static_cast<std::uint32_t>(n));
  StateId init = id(a.initial, b.initial, 0, 0);
  if (k == 0) {
    std::vector<NfaTransition> nd;
    nd.reserve(delta.size());
    for (const auto& t : delta) nd.push_back({t.from, t.to, t.letter});
    return BuchiNfa(*a.alphabet, std::move(names), init, std::move(accepting), std::move(nd));
  }
  // Guard bits of the idle component are open: expand them.
  std::vector<CounterTransition> full;
  const std::uint16_t amask = static_cast<std::uint16_t>((1u << a.counters) - 1);
  const std::uint16_t bmask = static_cast<std::uint16_t>(((1u << k) - 1) & ~amask);
  for (const auto& t : delta) {
    bool a_moves = ((t.from >> 1) & 1) == 0;
    std::uint16_t open = a_moves ? bmask : amask;
    std::uint16_t sub = 0;
    while (true) {
      full.push_back({t.from, t.to, t.letter, static_cast<std::uint16_t>(t.nonzero | sub), t.inc, t.dec});
      if (sub == open) break;
      sub = static_cast<std::uint16_t>((sub - open) & open);
    }
  }
  return CounterAutomaton(*a.alphabet, k, a.realtime && b.realtime, std::move(names), init, std::move(accepting),
                          std::move(full));
}

std::pair<CounterAutomaton, MachineSpec> inclusion_pair(const MachineSpec& z) {
  const Alphabet* alphabet = std::visit(
      [](const auto& m) -> const Alphabet* {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TwoTapeAutomaton>) {
          throw UnsupportedMachine("inclusion pairs are formed with one-tape machines");
        } else if constexpr (std::is_same_v<T, TuringMachine>) {
          return &m.input();
        } else {
          return &m.alphabet();
        }
      },
      z);
  return {universal_machine(*alphabet), z};
}

}  // namespace omegared
