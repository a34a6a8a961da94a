// Real-time 1-counter automaton C over W -> 2-tape automaton over W' = W + {C}.
//
// Part R1 reads (h(x), alpha) and keeps C's counter as the offset of the
// tape-2 head inside alpha's current block: at the start of block n of h(x)
// (after its letters "C0") tape 2 sits c+1 letters into block n of alpha. Both
// heads then read zeros in pairs until alpha's block ends, which leaves c
// zeros of h(x) before x(n); a transition of C is a tape-1 read of those c
// zeros and x(n) whose tape-2 part sets the new offset.
//
// Part R2 accepts every pair outside h(W^omega) x {alpha}; it is a union of
// small detectors for the first place where one of the tapes breaks format.

#include "builder.hpp"
#include "omegared/error.hpp"
#include "omegared/reductions.hpp"

namespace omegared {

using detail::TwoTapeBuilder;

TwoTapeAutomaton one_counter_to_two_tape(const CounterAutomaton& c) {
  if (c.counters() != 1 || !c.realtime()) {
    throw UnsupportedMachine("H' expects a real-time 1-counter automaton");
  }
  const Alphabet& w = c.alphabet();
  if (!w.contains("0")) throw AlphabetMismatch("H' needs the letter 0 in the input alphabet");
  if (w.contains("C")) throw AlphabetMismatch("H' reserves the letter C");
  const Alphabet wp = merge_alphabets(w, {"C"});
  TwoTapeBuilder b(wp, wp);
  const LetterId C = static_cast<LetterId>(*wp.index_of("C"));
  const LetterId Z = static_cast<LetterId>(*wp.index_of("0"));
  auto lid = [&](LetterId a) { return static_cast<LetterId>(*wp.index_of(w[a])); };
  const LetterWord none{}, z{Z}, cz{C, Z}, czz{C, Z, Z}, cc{C};

  StateId init = b.state("init");
  StateId r1 = b.state("r1");

  // R1. pair(q): after "C0" on tape 1, pairing zeros. tail(q): alpha's block
  // ended, c >= 1 zeros of h(x) remain.
  const auto n = static_cast<std::uint32_t>(c.num_states());
  std::vector<bool> has_nz(n, false);
  for (const auto& t : c.transitions()) {
    if (t.nonzero & 1) has_nz[t.from] = true;
  }
  StateId pair = b.embed_states(c.control().states(), "pair.");
  StateId tail = b.embed_states(c.control().states(), "tail.");
  for (StateId q = 0; q < n; ++q) b.set_accepting(pair + q, c.accepting(q));
  b.add(r1, cz, cz, pair + c.initial());
  const std::uint32_t zid = b.word(z);
  for (StateId q = 0; q < n; ++q) {
    b.add_ids(pair + q, zid, zid, pair + q);
    if (has_nz[q]) {
      b.add(pair + q, z, cz, tail + q);
      b.add_ids(tail + q, zid, zid, tail + q);
    }
  }
  for (const auto& t : c.transitions()) {
    const LetterId x = lid(t.letter);
    const LetterWord xcz{x, C, Z}, zxcz{Z, x, C, Z};
    if (!(t.nonzero & 1)) {
      b.add(pair + t.from, xcz, (t.inc & 1) ? czz : cz, pair + t.to);
    } else if (t.dec & 1) {
      b.add(pair + t.from, zxcz, cz, pair + t.to);
      b.add(tail + t.from, zxcz, z, pair + t.to);
    } else {
      b.add(tail + t.from, xcz, (t.inc & 1) ? LetterWord{Z, Z} : z, pair + t.to);
    }
  }

  // R2.
  StateId bad = b.state("bad", true);
  std::vector<std::uint32_t> w1(wp.size());
  for (LetterId a = 0; a < wp.size(); ++a) w1[a] = b.word({a});
  const std::uint32_t eps = b.word(none);
  auto free1 = [&](StateId s) {
    for (LetterId a = 0; a < wp.size(); ++a) b.add_ids(s, w1[a], eps, s);
  };
  auto free2 = [&](StateId s) {
    for (LetterId a = 0; a < wp.size(); ++a) b.add_ids(s, eps, w1[a], s);
  };
  free1(bad);
  free2(bad);

  // Tape 2 is not (C 0^+)^omega.
  StateId u0 = b.state("alpha.0"), u1 = b.state("alpha.1"), u2 = b.state("alpha.2"),
          uz = b.state("alpha.zeros", true);
  for (StateId s : {u0, u1, u2, uz}) free1(s);
  for (LetterId a = 0; a < wp.size(); ++a) {
    if (a == C) {
      b.add_ids(u0, eps, w1[a], u1);
      b.add_ids(u1, eps, w1[a], bad);
      b.add_ids(u2, eps, w1[a], u1);
    } else if (a == Z) {
      b.add_ids(u0, eps, w1[a], bad);
      b.add_ids(u1, eps, w1[a], u2);
      b.add_ids(u2, eps, w1[a], u2);
      b.add_ids(u2, eps, w1[a], uz);
      b.add_ids(uz, eps, w1[a], uz);
    } else {
      for (StateId s : {u0, u1, u2}) b.add_ids(s, eps, w1[a], bad);
    }
  }

  // Tape 1 is not a sequence of blocks C 0^j y with j >= 1, y in W.
  StateId v0 = b.state("h.0"), v1 = b.state("h.1"), v2 = b.state("h.2"), v3 = b.state("h.3"),
          v4 = b.state("h.4"), vz = b.state("h.zeros", true);
  for (StateId s : {v0, v1, v2, v3, v4, vz}) free2(s);
  for (LetterId a = 0; a < wp.size(); ++a) {
    if (a == C) {
      b.add_ids(v0, w1[a], eps, v1);
      b.add_ids(v1, w1[a], eps, bad);
      b.add_ids(v2, w1[a], eps, bad);
      b.add_ids(v3, w1[a], eps, v1);
      b.add_ids(v4, w1[a], eps, v1);
    } else if (a == Z) {
      b.add_ids(v0, w1[a], eps, bad);
      b.add_ids(v1, w1[a], eps, v2);
      b.add_ids(v2, w1[a], eps, v3);
      b.add_ids(v3, w1[a], eps, v3);
      b.add_ids(v4, w1[a], eps, bad);
      for (StateId s : {v2, v3, vz}) b.add_ids(s, w1[a], eps, vz);
    } else {
      b.add_ids(v0, w1[a], eps, bad);
      b.add_ids(v1, w1[a], eps, bad);
      b.add_ids(v2, w1[a], eps, v4);
      b.add_ids(v3, w1[a], eps, v4);
      b.add_ids(v4, w1[a], eps, bad);
    }
  }

  // The first block of tape 2 holds more than one zero.
  StateId y0 = b.state("first.0"), y1 = b.state("first.1"), y2 = b.state("first.2");
  for (StateId s : {y0, y1, y2}) free1(s);
  b.add_ids(y0, eps, w1[C], y1);
  b.add_ids(y1, eps, w1[Z], y2);
  b.add_ids(y2, eps, w1[Z], bad);

  // Some block n has |tape-1 block| != |tape-2 block| + 1. Blocks are skipped
  // in step (C read together on both tapes); the compared block is read one
  // tape-1 letter ahead, then alternately.
  StateId s0 = b.state("len.0"), s1 = b.state("len.skip"), m0 = b.state("len.first"), m1 = b.state("len.a"),
          m2 = b.state("len.b"), m3 = b.state("len.end");
  const std::uint32_t cpair = b.word(cc);
  b.add_ids(s0, cpair, cpair, s1);
  b.add_ids(s0, cpair, cpair, m0);
  b.add_ids(s1, cpair, cpair, s1);
  b.add_ids(s1, cpair, cpair, m0);
  b.add_ids(m0, w1[C], eps, bad);
  b.add_ids(m1, w1[C], eps, m3);
  b.add_ids(m2, eps, w1[C], bad);
  for (LetterId a = 0; a < wp.size(); ++a) {
    if (a == C) continue;
    b.add_ids(s1, w1[a], eps, s1);
    b.add_ids(s1, eps, w1[a], s1);
    b.add_ids(m0, w1[a], eps, m1);
    b.add_ids(m1, w1[a], eps, m2);
    b.add_ids(m2, eps, w1[a], m1);
    b.add_ids(m3, eps, w1[a], bad);
  }

  // Some block n has |tape-1 block n| != |tape-2 block n+1|: tape 2 first
  // skips its block 1, then blocks are skipped in step as above.
  StateId g0 = b.state("next.0"), g1 = b.state("next.first"), g2 = b.state("next.skip"), n0 = b.state("next.a"),
          n1 = b.state("next.b"), n3 = b.state("next.end");
  b.add_ids(g0, eps, w1[C], g1);
  b.add_ids(g1, cpair, cpair, g2);
  b.add_ids(g1, cpair, cpair, n0);
  b.add_ids(g2, cpair, cpair, g2);
  b.add_ids(g2, cpair, cpair, n0);
  b.add_ids(n0, w1[C], eps, n3);
  b.add_ids(n1, eps, w1[C], bad);
  for (LetterId a = 0; a < wp.size(); ++a) {
    if (a == C) continue;
    b.add_ids(g1, eps, w1[a], g1);
    b.add_ids(g2, w1[a], eps, g2);
    b.add_ids(g2, eps, w1[a], g2);
    b.add_ids(n0, w1[a], eps, n1);
    b.add_ids(n1, eps, w1[a], n0);
    b.add_ids(n3, eps, w1[a], bad);
  }

  // Union: the fresh initial state copies every start state's moves.
  std::vector<TwoTapeTransition> starts;
  for (const auto& t : b.transitions()) {
    for (StateId s : {r1, u0, v0, y0, s0, g0}) {
      if (t.from == s) starts.push_back({init, t.to, t.u, t.v});
    }
  }
  for (const auto& t : starts) b.add_ids(t.from, t.u, t.v, t.to);
  return std::move(b).build(init);
}

}  // namespace omegared
