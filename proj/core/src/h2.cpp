// 2-counter automaton B over sigma -> real-time 8-counter automaton over
// sigma + {E}.
//
// On theta_S(x) the simulation reads one letter per step. Letters x(n) are
// queued as base-d digits (d = |sigma| + 1, least significant digit dequeued
// first) in counter Q with P = d^length; B's counters are kept as they are.
// The E-blocks pay for B's moves and for the queue arithmetic:
//   idle(q)  wait, take a lambda move of B, start dequeuing for a letter move
//            of B, or (on a letter of sigma) start enqueuing it
//   enqueue  Q += digit * P; P *= d
//   dequeue  r = Q mod d; Q /= d; P /= d
// Around both macros B's state (resp. the chosen transition) is parked in M
// and counted back out, so the macro states are shared by all of B. Letters of
// sigma are only accepted in idle states. A flag records an accepting state of
// B since the last completed read; a completed read with the flag set is the
// accepting event.
//
// Counters: 0 T (scratch), 1 Q, 2 P, 3 M, 4 and 5 B's counters, 6 and 7 unused.

#include <algorithm>
#include <string>

#include "builder.hpp"
#include "omegared/error.hpp"
#include "omegared/reductions.hpp"

namespace omegared {

using detail::bit;
using detail::CounterBuilder;
using detail::Guard;

namespace {

constexpr unsigned kT = 0, kQ = 1, kP = 2, kM = 3, kX = 4, kY = 5;

std::uint16_t lift(std::uint16_t b) { return static_cast<std::uint16_t>(b << kX); }

}  // namespace

CounterAutomaton two_counter_to_rt8(const CounterAutomaton& src, std::uint64_t S) {
  if (src.counters() > 2) throw UnsupportedMachine("H2 expects a 2-counter automaton");
  if (S < 2) throw Error("H2 needs S >= 2");
  const Alphabet& sigma = src.alphabet();
  if (sigma.contains("E")) throw AlphabetMismatch("H2 reserves the letter E");
  const Alphabet gamma = Coding::theta(S, sigma).output();
  CounterBuilder b(gamma, 8, true);
  const LetterId E = b.letter("E");
  auto gl = [&](LetterId a) { return static_cast<LetterId>(*gamma.index_of(sigma[a])); };
  const unsigned ns = static_cast<unsigned>(sigma.size());
  const unsigned d = ns + 1;
  const auto nb = static_cast<std::uint32_t>(src.num_states());

  std::vector<std::uint32_t> reads;  // letter transitions of B, by index
  std::vector<std::uint32_t> double_dec;
  for (std::uint32_t i = 0; i < src.transitions().size(); ++i) {
    const auto& t = src.transitions()[i];
    if (t.letter != kLambda) reads.push_back(i);
    if ((t.dec & 3) == 3) double_dec.push_back(i);
  }
  const auto nr = static_cast<std::uint32_t>(reads.size());

  const Guard base = Guard{}.zero(6).zero(7);
  const Guard idle_known = base.zero(kT).nz(kP).zero(kM);

  StateId init = b.state("init");
  // Every family below has two copies, for flag 0 and flag 1.
  StateId idle[2], ap[2], mid[2];
  for (unsigned f = 0; f < 2; ++f) {
    idle[f] = b.embed_states(src.control().states(), "idle" + std::to_string(f) + ".");
  }
  auto fam = [&](const std::string& stem, std::uint32_t count, StateId (&out)[2]) {
    for (unsigned f = 0; f < 2; ++f) out[f] = b.block(stem + std::to_string(f) + "_", count);
  };
  StateId svq[2], rsq[2], svt[2], rst[2], e1[2], e1b[2], e2[2], e2b[2], d1[2], d2[2], d3[2], d4[2];
  fam("save", ns * nb, svq);
  fam("back", nb + 1, rsq);
  fam("pick", nr, svt);
  fam("find", ns * (nr + 1), rst);
  fam("apply", nr, ap);
  fam("split", static_cast<std::uint32_t>(double_dec.size()), mid);
  fam("enq", ns, e1);
  fam("enqd", ns * ns, e1b);
  fam("grow", 1, e2);
  fam("growd", d, e2b);
  fam("deq", d, d1);
  fam("deqq", d, d2);
  fam("deqp", d * d, d3);
  fam("deqr", d, d4);
  for (std::uint32_t i = 0; i < nr; ++i) b.set_accepting(ap[1] + i);

  auto F = [&](StateId q) -> unsigned { return src.accepting(q) ? 1 : 0; };
  auto guard_xy = [&](Guard g, std::uint16_t nonzero) {
    for (unsigned c = 0; c < 2; ++c) g = (nonzero >> c) & 1 ? g.nz(kX + c) : g.zero(kX + c);
    return g;
  };
  // Applies B's update (splitting a double decrement over two steps) from a
  // state where T = 0, P != 0, M = 0.
  auto apply = [&](StateId from, LetterId a, Guard g, std::uint32_t ti, unsigned nf) {
    const auto& t = src.transitions()[ti];
    const StateId to = idle[nf] + t.to;
    if ((t.dec & 3) != 3) {
      b.add(from, a, g, to, lift(t.inc), lift(t.dec));
      return;
    }
    auto k = static_cast<std::uint32_t>(std::lower_bound(double_dec.begin(), double_dec.end(), ti) - double_dec.begin());
    b.add(from, a, g, mid[nf] + k, lift(t.inc), bit(kX));
  };
  for (unsigned f = 0; f < 2; ++f) {
    for (std::uint32_t k = 0; k < double_dec.size(); ++k) {
      const auto& t = src.transitions()[double_dec[k]];
      b.add(mid[f] + k, E, idle_known.nz(kY), idle[f] + t.to, 0, bit(kY));
    }
  }

  // Start: x(1) is enqueued with B in its initial state.
  for (LetterId a = 0; a < ns; ++a) {
    b.add(init, gl(a), base.zero(kT).zero(kQ).zero(kP).zero(kM).zero(kX).zero(kY),
          svq[F(src.initial())] + a * nb + src.initial(), static_cast<std::uint16_t>(bit(kP) | bit(kM)));
  }

  for (unsigned f = 0; f < 2; ++f) {
    // Idle.
    for (StateId q = 0; q < nb; ++q) {
      const StateId s = idle[f] + q;
      b.add(s, E, idle_known, s);
      for (LetterId a = 0; a < ns; ++a) b.add(s, gl(a), idle_known, svq[f] + a * nb + q, bit(kM));
    }
    for (std::uint32_t i = 0; i < src.transitions().size(); ++i) {
      const auto& t = src.transitions()[i];
      const Guard g = guard_xy(idle_known, t.nonzero);
      if (t.letter == kLambda) {
        apply(idle[f] + t.from, E, g, i, f | F(t.to));
      } else {
        auto k = static_cast<std::uint32_t>(std::lower_bound(reads.begin(), reads.end(), i) - reads.begin());
        b.add(idle[f] + t.from, E, g.nz(kQ), svt[f] + k, bit(kM));
      }
    }
    // Park B's state in M (value = index + 1), enqueue, count it back out.
    const Guard parked = base.zero(kT).nz(kP).nz(kM);
    for (LetterId a = 0; a < ns; ++a) {
      for (StateId k = 0; k < nb; ++k) {
        const StateId s = svq[f] + a * nb + k;
        if (k > 0) {
          b.add(s, E, parked, s - 1, bit(kM));
        } else {
          b.add(s, E, parked, e1[f] + a);
        }
      }
    }
    for (LetterId a = 0; a < ns; ++a) {
      const unsigned digit = a + 1;
      const StateId s = e1[f] + a;
      const StateId after = digit > 1 ? e1b[f] + a * ns + 1 : s;
      b.add(s, E, base.nz(kM).nz(kP), after, static_cast<std::uint16_t>(bit(kT) | bit(kQ)), bit(kP));
      b.add(s, E, base.nz(kM).zero(kP).nz(kT), e2[f]);
      for (unsigned i = 1; i < digit; ++i) {
        const StateId nxt = i + 1 < digit ? e1b[f] + a * ns + i + 1 : s;
        b.add(e1b[f] + a * ns + i, E, base.nz(kM).nz(kT).nz(kQ), nxt, bit(kQ));
      }
    }
    b.add(e2[f], E, base.nz(kM).nz(kQ).nz(kT), e2b[f] + 1, bit(kP), bit(kT));
    b.add(e2[f], E, base.nz(kM).nz(kQ).zero(kT).nz(kP), rsq[f]);
    for (unsigned i = 1; i < d; ++i) {
      const StateId nxt = i + 1 < d ? e2b[f] + i + 1 : e2[f];
      b.add(e2b[f] + i, E, base.nz(kM).nz(kQ).nz(kP), nxt, bit(kP));
    }
    for (StateId k = 0; k <= nb; ++k) {
      const Guard g = base.zero(kT).nz(kP).nz(kQ);
      if (k < nb) b.add(rsq[f] + k, E, g.nz(kM), rsq[f] + k + 1, 0, bit(kM));
      if (k > 0) b.add(rsq[f] + k, E, g.zero(kM), idle[f] + (k - 1));
    }

    // Park the chosen letter transition, dequeue, count it back out and
    // compare the dequeued digit with its letter.
    for (std::uint32_t k = 0; k < nr; ++k) {
      const StateId s = svt[f] + k;
      const Guard g = base.zero(kT).nz(kP).nz(kM).nz(kQ);
      if (k > 0) {
        b.add(s, E, g, s - 1, bit(kM));
      } else {
        b.add(s, E, g, d1[f]);
      }
    }
    for (unsigned j = 0; j < d; ++j) {
      const bool wrap = j + 1 == d;
      b.add(d1[f] + j, E, base.nz(kP).nz(kM).nz(kQ), d1[f] + (j + 1) % d, wrap ? bit(kT) : 0, bit(kQ));
      if (j > 0) b.add(d1[f] + j, E, base.nz(kP).nz(kM).zero(kQ), d2[f] + j);
      b.add(d2[f] + j, E, base.nz(kP).nz(kM).nz(kT), d2[f] + j, bit(kQ), bit(kT));
      b.add(d2[f] + j, E, base.nz(kP).nz(kM).zero(kT), d3[f] + j * d);
      for (unsigned i = 0; i < d; ++i) {
        const bool w = i + 1 == d;
        b.add(d3[f] + j * d + i, E, base.nz(kM).nz(kP), d3[f] + j * d + (i + 1) % d, w ? bit(kT) : 0, bit(kP));
      }
      b.add(d3[f] + j * d, E, base.nz(kM).zero(kP).nz(kT), d4[f] + j);
      b.add(d4[f] + j, E, base.nz(kM).nz(kT), d4[f] + j, bit(kP), bit(kT));
      if (j > 0) b.add(d4[f] + j, E, base.nz(kM).zero(kT).nz(kP), rst[f] + (j - 1) * (nr + 1));
    }
    for (LetterId r = 0; r < ns; ++r) {
      for (std::uint32_t k = 0; k <= nr; ++k) {
        const StateId s = rst[f] + r * (nr + 1) + k;
        const Guard g = base.zero(kT).nz(kP);
        if (k < nr) b.add(s, E, g.nz(kM), s + 1, 0, bit(kM));
        if (k > 0 && src.transitions()[reads[k - 1]].letter == r) b.add(s, E, g.zero(kM), ap[f] + (k - 1));
      }
    }
    // Complete the read. After an accepting event the flag restarts.
    for (std::uint32_t k = 0; k < nr; ++k) {
      const auto& t = src.transitions()[reads[k]];
      apply(ap[f] + k, E, guard_xy(idle_known, t.nonzero), reads[k], F(t.to));
    }
  }
  auto sim = std::move(b).build(init);
  const auto comp = complement_pattern(Coding::theta(S, sigma));
  return union_machines(sim, std::get<CounterAutomaton>(comp));
}

}  // namespace omegared
