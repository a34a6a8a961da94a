// Real-time k-counter automaton A over G -> real-time 1-counter automaton
// over G + {A, B, F, 0}.
//
// The counters used by A (those it ever increments) are packed into
// V = prod p_i^{c_i}. On phi_K(h_K(x)) the letters F are no-ops, the first
// 0-block is skipped with V = 1, and a transition of A taken at x(n) with
// increments I and decrements D is carried out over the next two 0-blocks,
// both of length L = K^{n+1}:
//   after B   count L - r V   (r = prod_I p: one decrement every r zeros while
//                              V lasts, then one increment per zero)
//   after A   count down to 0, then one increment every s zeros
//                             (s = prod_D p), which leaves r V / s
// Zero tests of A are answered from the control: the status (zero or not) of
// every counter is carried along. An increment makes a counter non-zero; a
// decremented counter is zero afterwards iff the new V is not divisible by its
// prime, which the second phase reads off V mod s. A run keeps up on images
// whenever the product of the primes used is at most K.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "builder.hpp"
#include "omegared/error.hpp"
#include "omegared/reductions.hpp"

namespace omegared {

using detail::bit;
using detail::CounterBuilder;
using detail::Guard;

namespace {

constexpr unsigned kPrimes[16] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

// Prime per counter (0 for counters never incremented). Busy counters get the
// small primes: the permutation minimizing sum(dec_i p^2 + inc_i p) is chosen.
std::vector<unsigned> assign_primes(const CounterAutomaton& a) {
  const unsigned k = a.counters();
  std::vector<std::uint64_t> incs(k, 0), decs(k, 0);
  for (const auto& t : a.transitions()) {
    for (unsigned c = 0; c < k; ++c) {
      if ((t.inc >> c) & 1) ++incs[c];
      if ((t.dec >> c) & 1) ++decs[c];
    }
  }
  std::vector<unsigned> used;
  for (unsigned c = 0; c < k; ++c) {
    if (incs[c]) used.push_back(c);
  }
  std::vector<unsigned> best(used.size());
  std::iota(best.begin(), best.end(), 0u);
  if (used.size() <= 8) {
    std::vector<unsigned> perm = best;
    std::uint64_t best_cost = UINT64_MAX;
    do {
      std::uint64_t cost = 0;
      for (std::size_t i = 0; i < used.size(); ++i) {
        const std::uint64_t p = kPrimes[perm[i]];
        cost += decs[used[i]] * p * p + incs[used[i]] * p;
      }
      if (cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::vector<unsigned> prime(k, 0);
  for (std::size_t i = 0; i < used.size(); ++i) prime[used[i]] = kPrimes[best[i]];
  return prime;
}

struct GadgetKey {
  StateId to;
  std::uint16_t status, inc, dec;
  auto tie() const { return std::tie(to, status, inc, dec); }
  bool operator<(const GadgetKey& o) const { return tie() < o.tie(); }
};

struct Gadget {
  GadgetKey key;
  std::uint64_t r = 1, s = 1;
  StateId base = 0;      // await B
  std::uint32_t size = 0;
  bool noop() const { return key.inc == 0 && key.dec == 0; }
  // Layout: await, then for no-ops {first, second}; otherwise
  // down(0..r-1), up, drain, fill(j, v) for j < s, v < s.
  StateId await() const { return base; }
  StateId first() const { return base + 1; }
  StateId second() const { return base + 2; }
  StateId down(std::uint64_t j) const { return static_cast<StateId>(base + 1 + j); }
  StateId up() const { return static_cast<StateId>(base + 1 + r); }
  StateId drain() const { return static_cast<StateId>(base + 2 + r); }
  StateId fill(std::uint64_t j, std::uint64_t v) const { return static_cast<StateId>(base + 3 + r + j * s + v); }
};

}  // namespace

std::uint64_t packing_modulus(const CounterAutomaton& a) {
  std::uint64_t m = 1;
  for (unsigned p : assign_primes(a)) {
    if (p) m *= p;
  }
  return m;
}

CounterAutomaton rt8_to_rt1(const CounterAutomaton& a, std::uint64_t K) {
  if (!a.realtime()) throw UnsupportedMachine("H3 expects a real-time counter automaton");
  if (K < 2) throw Error("H3 needs K >= 2");
  const Alphabet& gamma = a.alphabet();
  for (const char* s : {"A", "B", "F", "0"}) {
    if (gamma.contains(s)) throw AlphabetMismatch(std::string("H3 reserves the letter ") + s);
  }
  const Coding coding = Coding::hk_phik(K, gamma);
  const Alphabet omega = coding.output();
  CounterBuilder b(omega, 1, true);
  const LetterId LA = b.letter("A"), LB = b.letter("B"), LF = b.letter("F"), LZ = b.letter("0");
  auto gl = [&](LetterId x) { return static_cast<LetterId>(*omega.index_of(gamma[x])); };
  const std::vector<unsigned> prime = assign_primes(a);
  auto product = [&](std::uint16_t mask) {
    std::uint64_t p = 1;
    for (unsigned c = 0; c < a.counters(); ++c) {
      if (((mask >> c) & 1) && prime[c]) p *= prime[c];
    }
    return p;
  };

  // One gadget per distinct (target, status before, update).
  std::map<GadgetKey, std::uint32_t> index;
  std::vector<Gadget> gadgets;
  std::vector<std::uint32_t> of_transition(a.transitions().size());
  for (std::size_t i = 0; i < a.transitions().size(); ++i) {
    const auto& t = a.transitions()[i];
    GadgetKey key{t.to, t.nonzero, t.inc, t.dec};
    auto [it, fresh] = index.try_emplace(key, static_cast<std::uint32_t>(gadgets.size()));
    if (fresh) {
      Gadget g;
      g.key = key;
      g.r = product(t.inc);
      g.s = product(t.dec);
      if (g.r > 4096 || g.s > 1024) throw UnsupportedMachine("H3: update touches too many counters at once");
      g.size = g.noop() ? 3 : static_cast<std::uint32_t>(3 + g.r + g.s * g.s);
      gadgets.push_back(g);
    }
    of_transition[i] = it->second;
  }

  StateId init = b.state("init");
  StateId skip = b.state("first");
  std::uint64_t total = 0;
  for (auto& g : gadgets) total += g.size;
  if (total > 0xF0000000u) throw UnsupportedMachine("H3 output too large");
  StateId base = b.block("g_", static_cast<std::uint32_t>(total));
  {
    std::uint64_t off = base;
    for (auto& g : gadgets) {
      g.base = static_cast<StateId>(off);
      off += g.size;
      b.set_accepting(g.await(), a.accepting(g.key.to));
    }
  }

  const Guard zero = Guard{}.zero(0), nz = Guard{}.nz(0), any{};
  const std::uint16_t C = bit(0);

  // Moves of A out of q when its counters have the given status.
  auto take = [&](StateId from, Guard guard, StateId q, std::uint16_t status) {
    for (const auto& t : a.out(q)) {
      if (t.nonzero != status) continue;
      const auto i = static_cast<std::size_t>(&t - a.transitions().data());
      b.add(from, gl(t.letter), guard, gadgets[of_transition[i]].await());
    }
  };

  b.add(init, LF, zero, init);
  b.add(init, LA, zero, skip, C);
  b.add(skip, LF, nz, skip);
  b.add(skip, LZ, nz, skip);
  take(skip, nz, a.initial(), 0);

  for (const auto& g : gadgets) {
    b.add(g.await(), LF, nz, g.await());
    if (g.noop()) {
      b.add(g.await(), LB, nz, g.first());
      for (StateId s : {g.first(), g.second()}) {
        b.add(s, LF, nz, s);
        b.add(s, LZ, nz, s);
      }
      b.add(g.first(), LA, nz, g.second());
      take(g.second(), nz, g.key.to, g.key.status);
      continue;
    }
    const std::uint64_t r = g.r, s = g.s;
    b.add(g.await(), LB, nz, g.down(0));
    // After B: L - r V.
    for (std::uint64_t j = 0; j < r; ++j) {
      b.add(g.down(j), LF, any, g.down(j));
      if (j == 0) {
        b.add(g.down(0), LZ, nz, g.down(1 % r), 0, C);
        b.add(g.down(0), LZ, zero, g.up(), C);
      } else {
        b.add(g.down(j), LZ, any, g.down((j + 1) % r));
      }
    }
    b.add(g.up(), LF, nz, g.up());
    b.add(g.up(), LZ, nz, g.up(), C);
    b.add(g.down(0), LA, zero, g.drain());
    b.add(g.up(), LA, nz, g.drain());
    // After A: drain, then one increment per s zeros; v counts increments mod s.
    b.add(g.drain(), LF, any, g.drain());
    b.add(g.drain(), LZ, nz, g.drain(), 0, C);
    b.add(g.drain(), LZ, zero, s == 1 ? g.fill(0, 1 % s) : g.fill(1, 0), s == 1 ? C : 0);
    for (std::uint64_t j = 0; j < s; ++j) {
      for (std::uint64_t v = 0; v < s; ++v) {
        b.add(g.fill(j, v), LF, any, g.fill(j, v));
        if (j + 1 == s) {
          b.add(g.fill(j, v), LZ, any, g.fill(0, (v + 1) % s), C);
        } else {
          b.add(g.fill(j, v), LZ, any, g.fill(j + 1, v));
        }
      }
    }
    // x(n+1): new status, then the next move of A.
    for (std::uint64_t v = 0; v < s; ++v) {
      std::uint16_t status = static_cast<std::uint16_t>(g.key.status | g.key.inc);
      for (unsigned c = 0; c < a.counters(); ++c) {
        if (((g.key.dec >> c) & 1) && prime[c] && v % prime[c] != 0) status &= static_cast<std::uint16_t>(~(1u << c));
      }
      take(g.fill(0, v), nz, g.key.to, status);
    }
  }
  // Unreachable copy of A's control (names, acceptance, initial state): states
  // no transition enters have no gadget, and the output should still
  // determine A.
  for (StateId q = 0; q < a.num_states(); ++q) {
    b.state((q == a.initial() ? "start_" : "in_") + a.control().states().name(q), a.accepting(q));
  }
  CounterAutomaton sim = std::move(b).build(init);
  auto rest = std::get<CounterAutomaton>(complement_pattern(coding));
  return union_machines(sim, rest);
}

}  // namespace omegared
