#include "builder.hpp"
#include "omegared/error.hpp"
#include "omegared/reductions.hpp"

namespace omegared {

using detail::CounterBuilder;
using detail::Guard;

namespace {

const Guard kZero = Guard{}.zero(0);
const Guard kNz = Guard{}.nz(0);
const Guard kAny = Guard{};

// Words x(1) E^{m1} x(2) E^{m2} ... are images iff m_1 = S and m_{n+1} = S m_n.
// Branches: a leading E, m_1 != S (finite chain), or a guessed block n whose
// successor is too short or too long (count m_n up, then one decrement per S
// letters E of block n+1).
CounterAutomaton theta_complement(std::uint64_t S, const Alphabet& sigma) {
  if (S < 1) throw Error("theta complement needs S >= 1");
  if (S > (1u << 26)) throw Error("theta complement: S too large");
  const Alphabet gamma = Coding::theta(S, sigma).output();
  CounterBuilder b(gamma, 1, true);
  const LetterId E = b.letter("E");
  StateId start = b.state("start");
  StateId skip = b.state("skip");
  StateId up = b.state("up");
  StateId sink = b.state("bad", true);
  StateId first = b.block("first_", static_cast<std::uint32_t>(S + 1));
  StateId down = b.block("down_", static_cast<std::uint32_t>(S));

  for (LetterId a = 0; a < gamma.size(); ++a) {
    b.add(sink, a, kAny, sink);
    b.add(skip, a, kZero, skip);
    if (a == E) {
      b.add(start, a, kZero, sink);
      for (std::uint64_t j = 0; j < S; ++j) b.add(first + j, a, kZero, first + j + 1);
      b.add(first + S, a, kZero, sink);
      b.add(up, a, kAny, up, detail::bit(0));
      b.add(down, a, kNz, down + (1 % S), 0, detail::bit(0));
      b.add(down, a, kZero, sink);
      for (std::uint64_t j = 1; j < S; ++j) b.add(down + j, a, kAny, down + (j + 1) % S);
    } else {
      b.add(start, a, kZero, first);
      b.add(start, a, kZero, skip);
      b.add(start, a, kZero, up);
      b.add(skip, a, kZero, up);
      for (std::uint64_t j = 0; j < S; ++j) b.add(first + j, a, kZero, sink);
      b.add(up, a, kAny, down);
      b.add(down, a, kNz, sink);
      for (std::uint64_t j = 1; j < S; ++j) b.add(down + j, a, kAny, sink);
    }
  }
  return std::move(b).build(start);
}

// Chain r_j: j more letters F are due before a non-F letter. A letter read at
// r_j with j >= 1 is caught one step early through the state `early`.
BuchiNfa phik_complement(std::uint64_t K, const Alphabet& input, const Alphabet& output) {
  if (K < 2) throw Error("phi_K complement needs K >= 2");
  if (K > 0xFFFFFFF0u) throw Error("phi_K complement: K too large");
  auto F = output.index_of("F");
  if (!F) throw Error("phi_K output alphabet lacks F");
  StateSpace names;
  StateId early = names.add_names({"early", "bad"});
  StateId sink = early + 1;
  StateId r = names.add_generated("r_", static_cast<std::uint32_t>(K));
  std::vector<bool> acc(names.size(), false);
  acc[sink] = true;
  std::vector<NfaTransition> d;
  d.reserve(2 * K + 4 * output.size());
  const auto f = static_cast<LetterId>(*F);
  for (std::uint64_t j = 1; j < K; ++j) d.push_back({static_cast<StateId>(r + j), static_cast<StateId>(r + j - 1), f});
  for (std::uint64_t j = 2; j < K; ++j) d.push_back({static_cast<StateId>(r + j), early, f});
  const StateId last = static_cast<StateId>(r + K - 1);
  d.push_back({r, sink, f});
  for (LetterId a = 0; a < output.size(); ++a) {
    d.push_back({sink, sink, a});
    if (a == f) continue;
    bool allowed = input.contains(output[a]);
    d.push_back({early, sink, a});
    d.push_back({last, sink, a});
    d.push_back({r, allowed ? last : sink, a});
  }
  return BuchiNfa(output, std::move(names), last, std::move(acc), std::move(d));
}

}  // namespace

// Structure of y = A Z0 x1 B Z1 A Z1' x2 B Z2 ... (Z are runs of 0) is checked
// letter by letter with F ignored; block lengths by one counter:
//   |Z0| != K         count Z0, then one decrement per letter of F^{K-1} B
//   |Z_{n+1}| != K |Z_n'|  count every letter from the first 0 of Z_n' up to x,
//                     then one decrement per 0 of the next run
//   |Z_n'| != |Z_n|   count, then compare
CounterAutomaton hk_complement_on_phik(std::uint64_t K, const Alphabet& gamma) {
  if (K < 2) throw Error("h_K complement needs K >= 2");
  const Alphabet omega = Coding::hk_phik(K, gamma).output();
  CounterBuilder b(omega, 1, true);
  const LetterId A = b.letter("A"), B = b.letter("B"), F = b.letter("F"), Z = b.letter("0");
  auto is_x = [&](LetterId a) { return gamma.contains(omega[a]); };

  StateId start = b.state("start");
  StateId t1 = b.state("t1"), t2 = b.state("t2"), t3 = b.state("t3"), t4 = b.state("t4");
  StateId tail = b.state("tail", true);
  StateId sink = b.state("bad", true);
  StateId skip = b.state("skip");
  StateId c0c = b.state("z0.count"), c0m = b.state("z0.measure"), c0v = b.state("z0.check");
  StateId dw = b.state("grow.wait"), dc = b.state("grow.count"), ds = b.state("grow.skip"),
          dd = b.state("grow.down");
  StateId cc = b.state("copy.count"), cd = b.state("copy.down");

  for (LetterId a = 0; a < omega.size(); ++a) {
    b.add(sink, a, kAny, sink);
    b.add(skip, a, kZero, skip);
  }
  for (StateId s : {start, t1, t2, t3, t4, tail, skip, dw}) b.add(s, F, kZero, s);
  for (StateId s : {c0c, ds, dd, cc, cd}) b.add(s, F, kAny, s);

  // Structure.
  for (LetterId a = 0; a < omega.size(); ++a) {
    if (a == F) continue;
    b.add(start, a, kZero, a == A ? t1 : sink);
    if (a == Z) {
      for (StateId s : {t1, t3, t4}) {
        b.add(s, a, kZero, s);
        b.add(s, a, kZero, tail);
      }
      b.add(t2, a, kZero, sink);
    } else if (is_x(a)) {
      b.add(t1, a, kZero, t2);
      b.add(t2, a, kZero, sink);
      b.add(t3, a, kZero, sink);
      b.add(t4, a, kZero, t2);
    } else if (a == A) {
      b.add(t1, a, kZero, sink);
      b.add(t2, a, kZero, sink);
      b.add(t3, a, kZero, t4);
      b.add(t4, a, kZero, sink);
    } else if (a == B) {
      b.add(t1, a, kZero, sink);
      b.add(t2, a, kZero, t3);
      b.add(t3, a, kZero, sink);
      b.add(t4, a, kZero, sink);
    }
  }
  b.add(tail, Z, kZero, tail);

  // Guesses.
  b.add(start, A, kZero, skip);
  b.add(start, A, kZero, c0c);
  b.add(start, A, kZero, dw);
  b.add(skip, A, kZero, dw);
  b.add(skip, B, kZero, cc);

  // |Z0| against K.
  b.add(c0c, Z, kAny, c0c, detail::bit(0));
  b.add(c0m, F, kNz, c0m, 0, detail::bit(0));
  b.add(c0m, F, kZero, sink);
  b.add(c0m, B, kNz, c0v, 0, detail::bit(0));
  b.add(c0m, B, kZero, sink);
  b.add(c0v, F, kNz, sink);

  // Growth by K.
  b.add(dw, Z, kZero, dc, detail::bit(0));
  b.add(dc, Z, kAny, dc, detail::bit(0));
  b.add(dc, F, kAny, dc, detail::bit(0));
  b.add(ds, B, kAny, dd);
  b.add(dd, Z, kNz, dd, 0, detail::bit(0));
  b.add(dd, Z, kZero, sink);
  b.add(dd, A, kNz, sink);

  // Copy Z_n -> Z_n'.
  b.add(cc, Z, kAny, cc, detail::bit(0));
  b.add(cc, A, kAny, cd);
  b.add(cd, Z, kNz, cd, 0, detail::bit(0));
  b.add(cd, Z, kZero, sink);

  for (LetterId a = 0; a < omega.size(); ++a) {
    if (!is_x(a)) continue;
    b.add(c0c, a, kAny, c0m);
    b.add(dw, a, kZero, ds);
    b.add(dc, a, kAny, ds);
    b.add(cd, a, kNz, sink);
  }
  return std::move(b).build(start);
}

MachineSpec complement_pattern(const Coding& c) {
  switch (c.kind) {
    case CodingKind::Theta:
      return theta_complement(c.param, c.input);
    case CodingKind::PhiK:
      return phik_complement(c.param, c.input, c.output());
    case CodingKind::HKPhiK: {
      const Alphabet omega = c.output();
      std::vector<Symbol> unpadded;
      for (const auto& s : omega.symbols()) {
        if (s != "F") unpadded.push_back(s);
      }
      Coding phi = Coding::phik(c.param, Alphabet(unpadded));
      if (!(phi.output() == omega)) throw Error("phi_K output differs from the h_K alphabet");
      CounterAutomaton format = nfa_to_counter(phik_complement(c.param, phi.input, omega));
      return union_machines(hk_complement_on_phik(c.param, c.input), format);
    }
    default:
      throw UnsupportedMachine("no complement machine for coding " + c.name());
  }
}

}  // namespace omegared
