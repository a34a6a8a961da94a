// Turing machine -> Buchi 2-counter automaton.
//
// Stage 1: a 3-counter program. The tape left of the head is a base-d stack
// in counter L, the tape right of the head (up to the furthest cell read so
// far) a stack in counter R, T is scratch; the scanned symbol is kept in the
// control. Digits are 1..|tape|, the top is the least significant digit, so
// an empty stack is 0. When the head moves right onto a cell that has never
// been scanned (R empty), the next input letter is read.
//
// Completeness and non-oscillation are checked with fences: a fence wipes L,
// is allowed only when L is non-empty (the head moved right since the last
// fence), and a later move left across it kills the branch. A run passes
// infinitely many fences iff the head position tends to infinity. Fences are
// the accepting states; in Buchi mode a fence also needs an accepting TM
// state since the previous fence, in 1' mode every non-accepting TM state is
// a dead end.
//
// Stage 2: Goedel packing X = 2^L 3^R 5^T with Y as scratch.

#include <string>

#include "builder.hpp"
#include "omegared/error.hpp"
#include "omegared/reductions.hpp"

namespace omegared {

using detail::CounterBuilder;
using detail::Guard;

namespace {

enum class OpKind { Inc, DecZ, Read, Nop, Dead };

struct Op {
  OpKind kind = OpKind::Dead;
  unsigned counter = 0;
  std::uint32_t next = 0;   // Inc; DecZ non-zero branch
  std::uint32_t zero = 0;   // DecZ zero branch
  std::vector<std::pair<LetterId, std::uint32_t>> edges;  // Read (letter), Nop (kLambda)
  bool accepting = false;
  std::string name;
};

class Program {
 public:
  std::uint32_t add(std::string name = {}) {
    Op op;
    op.name = name.empty() ? "o" + std::to_string(ops.size()) : std::move(name);
    ops.push_back(std::move(op));
    return static_cast<std::uint32_t>(ops.size() - 1);
  }
  std::uint32_t inc(unsigned c, std::uint32_t next) {
    auto s = add();
    ops[s].kind = OpKind::Inc;
    ops[s].counter = c;
    ops[s].next = next;
    return s;
  }
  // Adds `times` increments of c in front of `next`.
  std::uint32_t inc_n(unsigned c, unsigned times, std::uint32_t next) {
    for (unsigned i = 0; i < times; ++i) next = inc(c, next);
    return next;
  }
  void decz(std::uint32_t s, unsigned c, std::uint32_t nz, std::uint32_t z) {
    ops[s].kind = OpKind::DecZ;
    ops[s].counter = c;
    ops[s].next = nz;
    ops[s].zero = z;
  }

  std::vector<Op> ops;
};

constexpr unsigned kL = 0, kR = 1, kT = 2;

// c <- d*c + digit, then `cont`.
std::uint32_t push(Program& p, unsigned c, unsigned d, unsigned digit, std::uint32_t cont) {
  auto loop1 = p.add(), loop2 = p.add();
  p.decz(loop1, c, p.inc_n(kT, d, loop1), loop2);
  p.decz(loop2, kT, p.inc(c, loop2), p.inc_n(c, digit, cont));
  return loop1;
}

// c <- c div d, continuing at conts[c mod d].
std::uint32_t pop(Program& p, unsigned c, unsigned d, const std::vector<std::uint32_t>& conts) {
  std::vector<std::uint32_t> count(d), rest(d);
  for (unsigned j = 0; j < d; ++j) count[j] = p.add();
  for (unsigned j = 0; j < d; ++j) rest[j] = p.add();
  for (unsigned j = 0; j < d; ++j) {
    std::uint32_t nz = j + 1 == d ? p.inc(kT, count[0]) : count[j + 1];
    p.decz(count[j], c, nz, rest[j]);
    p.decz(rest[j], kT, p.inc(c, rest[j]), conts[j]);
  }
  return count[0];
}

Program tm_program(const TuringMachine& m) {
  const bool buchi = m.mode() == TmAcceptance::Buchi;
  const unsigned nsym = static_cast<unsigned>(m.tape().size());
  const unsigned d = nsym + 1;
  const unsigned flags = buchi ? 2 : 1;
  Program p;
  auto start = p.add("start");
  std::vector<std::uint32_t> bnd(m.num_states() * nsym * flags);
  auto bid = [&](StateId q, unsigned sym, unsigned f) -> std::uint32_t& {
    return bnd[(static_cast<std::size_t>(q) * nsym + sym) * flags + f];
  };
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (unsigned s = 0; s < nsym; ++s) {
      for (unsigned f = 0; f < flags; ++f) {
        bid(q, s, f) = p.add(m.control().states().name(q) + "/" + std::to_string(s) + "/" + std::to_string(f));
        p.ops[bid(q, s, f)].kind = OpKind::Nop;
      }
    }
  }
  const auto dead = p.add("dead");
  auto flag_after = [&](unsigned f, StateId to) -> unsigned { return buchi && (f || m.accepting(to)) ? 1 : 0; };

  for (unsigned a = 0; a < m.input().size(); ++a) {
    auto sym = static_cast<unsigned>(*m.tape().index_of(m.input()[a]));
    p.ops[start].kind = OpKind::Read;
    p.ops[start].edges.push_back({static_cast<LetterId>(a), bid(m.initial(), sym, flag_after(0, m.initial()))});
  }

  for (StateId q = 0; q < m.num_states(); ++q) {
    const bool alive = buchi || m.accepting(q);
    for (unsigned cur = 0; cur < nsym; ++cur) {
      for (unsigned f = 0; f < flags; ++f) {
        const auto here = bid(q, cur, f);
        // Fence.
        if (alive && (!buchi || f == 1)) {
          auto wipe = p.add(), done = p.add();
          auto first = p.add();
          p.ops[done].kind = OpKind::Nop;
          p.ops[done].accepting = true;
          p.ops[done].edges.push_back({kLambda, bid(q, cur, 0)});
          p.decz(first, kL, wipe, dead);
          p.decz(wipe, kL, wipe, done);
          p.ops[here].edges.push_back({kLambda, first});
        }
        for (const auto& t : m.out(q)) {
          if (t.read != cur) continue;
          const unsigned nf = flag_after(f, t.to);
          std::uint32_t entry;
          if (t.move == Move::S) {
            entry = bid(t.to, t.write, nf);
          } else {
            std::vector<std::uint32_t> conts(d);
            for (unsigned r = 1; r < d; ++r) conts[r] = bid(t.to, r - 1, nf);
            if (t.move == Move::R) {
              auto read = p.add();
              p.ops[read].kind = OpKind::Read;
              for (unsigned a = 0; a < m.input().size(); ++a) {
                auto sym = static_cast<unsigned>(*m.tape().index_of(m.input()[a]));
                p.ops[read].edges.push_back({static_cast<LetterId>(a), bid(t.to, sym, nf)});
              }
              conts[0] = read;
              entry = push(p, kL, d, t.write + 1, pop(p, kR, d, conts));
            } else {
              conts[0] = dead;
              entry = push(p, kR, d, t.write + 1, pop(p, kL, d, conts));
            }
          }
          // Moves of dead-end states are still built, unreachable, so the
          // output keeps the whole transition table.
          if (alive) p.ops[here].edges.push_back({kLambda, entry});
        }
      }
    }
  }
  return p;
}

constexpr unsigned kX = 0, kY = 1;
constexpr unsigned kPrime[3] = {2, 3, 5};

CounterAutomaton godel(const Program& p, const Alphabet& alphabet) {
  CounterBuilder b(alphabet, 2, false);
  const auto n = static_cast<std::uint32_t>(p.ops.size());
  StateId init = b.state("init");
  std::vector<StateId> at(n);
  for (std::uint32_t i = 0; i < n; ++i) at[i] = b.state(p.ops[i].name, p.ops[i].accepting);
  // Internal states: Inc needs p, DecZ needs 2p + 1.
  std::vector<StateId> extra(n, 0);
  std::uint32_t total = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    extra[i] = total;
    if (p.ops[i].kind == OpKind::Inc) total += kPrime[p.ops[i].counter];
    if (p.ops[i].kind == OpKind::DecZ) total += 2 * kPrime[p.ops[i].counter] + 1;
  }
  StateId g = b.block("g_", total);
  const Guard any{};
  const Guard idle = any.nz(kX).zero(kY);
  b.add(init, kLambda, any.zero(kX).zero(kY), at[0], detail::bit(kX));
  for (std::uint32_t i = 0; i < n; ++i) {
    const Op& op = p.ops[i];
    const StateId s = at[i];
    switch (op.kind) {
      case OpKind::Dead:
        break;
      case OpKind::Nop:
      case OpKind::Read:
        for (auto [a, to] : op.edges) b.add(s, a, idle, at[to]);
        break;
      case OpKind::Inc: {
        // X -> Y, then Y -> X times the prime.
        const unsigned q = kPrime[op.counter];
        const StateId back = g + extra[i];
        b.add(s, kLambda, any.nz(kX), s, detail::bit(kY), detail::bit(kX));
        b.add(s, kLambda, any.zero(kX).nz(kY), back);
        for (unsigned j = 0; j < q; ++j) {
          const StateId nxt = back + (j + 1) % q;
          if (j == 0) {
            b.add(back, kLambda, any.nz(kY), nxt, detail::bit(kX), detail::bit(kY));
            b.add(back, kLambda, any.zero(kY).nz(kX), at[op.next]);
          } else {
            b.add(back + j, kLambda, any.nz(kX), nxt, detail::bit(kX));
          }
        }
        break;
      }
      case OpKind::DecZ: {
        // X -> Y counting X mod the prime; divisible: Y -> X divided by the
        // prime (exponent was non-zero), otherwise Y -> X unchanged.
        const unsigned q = kPrime[op.counter];
        const StateId cnt = g + extra[i];  // cnt+1 .. cnt+q-1; phase 0 is s
        const StateId div = cnt + q;       // q states
        const StateId rest = div + q;
        auto phase = [&](unsigned j) { return j == 0 ? s : cnt + j; };
        for (unsigned j = 0; j < q; ++j) {
          b.add(phase(j), kLambda, any.nz(kX), phase((j + 1) % q), detail::bit(kY), detail::bit(kX));
          b.add(phase(j), kLambda, any.zero(kX).nz(kY), j == 0 ? div : rest);
        }
        for (unsigned j = 0; j < q; ++j) {
          const std::uint16_t up = j + 1 == q ? detail::bit(kX) : 0;
          b.add(div + j, kLambda, any.nz(kY), div + (j + 1) % q, up, detail::bit(kY));
        }
        b.add(div, kLambda, any.zero(kY).nz(kX), at[op.next]);
        b.add(rest, kLambda, any.nz(kY), rest, detail::bit(kX), detail::bit(kY));
        b.add(rest, kLambda, any.zero(kY).nz(kX), at[op.zero]);
        break;
      }
    }
  }
  return std::move(b).build(init);
}

}  // namespace

CounterAutomaton tm_to_two_counter(const TuringMachine& m) {
  if (m.tape().size() > 60000) throw UnsupportedMachine("tape alphabet too large");
  return godel(tm_program(m), m.input());
}

}  // namespace omegared
