#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "omegared/error.hpp"

namespace omegared::oracle {

namespace {

constexpr int kMissing = -1;

// Positions in u.v^omega folded to [0, |u|+|v|): p letters have been read.
// In free mode there is a single position and every letter is allowed.
struct Track {
  bool free = false;
  std::size_t spoke = 0;
  std::size_t period = 1;
  std::vector<int> letters;  // alphabet id of letter p+1, or kMissing

  Track() : free(true) {}
  Track(const LassoWord& w, const Alphabet& a) : spoke(w.spoke().size()), period(w.cycle().size()) {
    for (std::size_t p = 0; p < spoke + period; ++p) {
      auto id = a.index_of(w.letter(p + 1));
      letters.push_back(id ? static_cast<int>(*id) : kMissing);
    }
  }
  std::size_t size() const { return free ? 1 : spoke + period; }
  // Position after reading `letter` at p, or -1.
  long step(std::size_t p, LetterId letter) const {
    if (free) return 0;
    if (letters[p] != static_cast<int>(letter)) return -1;
    std::size_t q = p + 1;
    if (q == spoke + period) q = spoke;
    return static_cast<long>(q);
  }
};

using BoolMatrix = std::vector<std::vector<char>>;

// Counter and pushdown machines as one move generator over a stack of ids.
// A 1-counter configuration stores its counter as a stack height over Z0.
struct Move {
  StateId to;
  LetterId letter;
  std::uint16_t top;
  std::vector<std::uint16_t> push;  // top first
};

struct StackMachine {
  std::size_t states;
  StateId initial;
  std::vector<bool> accepting;
  std::vector<std::vector<Move>> out;
};

StackMachine from_counter(const CounterAutomaton& m) {
  StackMachine s{m.num_states(), m.initial(), m.control().accepting_set(), {}};
  s.out.resize(m.num_states());
  for (const auto& t : m.transitions()) {
    Move mv{t.to, t.letter, static_cast<std::uint16_t>((t.nonzero & 1) ? 1 : 0), {}};
    // top 1 is "A" (counter > 0), top 0 is Z0.
    if (t.nonzero & 1) {
      int keep = 1 + ((t.inc & 1) ? 1 : 0) - ((t.dec & 1) ? 1 : 0);
      mv.push.assign(static_cast<std::size_t>(keep), 1);
    } else {
      mv.push = (t.inc & 1) ? std::vector<std::uint16_t>{1, 0} : std::vector<std::uint16_t>{0};
    }
    s.out[t.from].push_back(mv);
  }
  return s;
}

StackMachine from_pda(const PushdownAutomaton& m) {
  StackMachine s{m.num_states(), m.initial(), m.control().accepting_set(), {}};
  s.out.resize(m.num_states());
  for (const auto& t : m.transitions()) s.out[t.from].push_back({t.to, t.letter, t.top, t.push});
  return s;
}

struct Config {
  StateId q;
  std::size_t p;
  std::vector<std::uint16_t> stack;  // bottom first
  auto operator<=>(const Config&) const = default;
};

// Successors of c; sets overflow when a successor would exceed the cap.
template <class F>
void successors(const StackMachine& m, const Track& track, const Config& c, unsigned cap, bool& overflow,
                F&& emit) {
  if (c.stack.empty()) return;
  const auto top = c.stack.back();
  for (const auto& mv : m.out[c.q]) {
    if (mv.top != top) continue;
    std::size_t p = c.p;
    if (mv.letter != kLambda) {
      long np = track.step(c.p, mv.letter);
      if (np < 0) continue;
      p = static_cast<std::size_t>(np);
    }
    Config n{mv.to, p, c.stack};
    n.stack.pop_back();
    for (auto it = mv.push.rbegin(); it != mv.push.rend(); ++it) n.stack.push_back(*it);
    if (n.stack.size() > cap + 1) {
      overflow = true;
      continue;
    }
    emit(n, mv.letter != kLambda);
  }
}

std::optional<bool> stack_search(const StackMachine& m, const Track& track, unsigned cap) {
  // Reachable configurations.
  bool overflow = false;
  std::set<Config> seen;
  std::deque<Config> todo;
  Config start{m.initial, 0, {0}};
  seen.insert(start);
  todo.push_back(start);
  std::set<std::tuple<StateId, std::size_t, std::uint16_t>> heads;
  while (!todo.empty()) {
    Config c = todo.front();
    todo.pop_front();
    heads.insert({c.q, c.p, c.stack.back()});
    successors(m, track, c, cap, overflow, [&](const Config& n, bool) {
      if (seen.insert(n).second) todo.push_back(n);
    });
  }
  // Pumpable segments from each head, on stacks above the head's top symbol.
  for (const auto& [q, p, top] : heads) {
    struct Item {
      Config c;
      unsigned flags;
      auto operator<=>(const Item&) const = default;
    };
    std::set<Item> visited;
    std::deque<Item> queue;
    const Config from{q, p, {top}};
    bool ignored = false;
    auto push = [&](const Config& n, unsigned flags) {
      if (n.stack.empty()) return;
      Item it{n, flags};
      if (visited.insert(it).second) queue.push_back(it);
    };
    successors(m, track, from, cap, ignored, [&](const Config& n, bool read) {
      push(n, (m.accepting[n.q] ? 1u : 0u) | (read ? 2u : 0u));
    });
    while (!queue.empty()) {
      Item it = queue.front();
      queue.pop_front();
      // Ending on the head's top symbol means the segment can be replayed.
      if (it.flags == 3 && it.c.q == q && it.c.p == p && it.c.stack.back() == top) return true;
      successors(m, track, it.c, cap, ignored, [&](const Config& n, bool read) {
        push(n, it.flags | (m.accepting[n.q] ? 1u : 0u) | (read ? 2u : 0u));
      });
    }
  }
  if (overflow) return std::nullopt;
  return false;
}

}  // namespace

bool nfa_member(const BuchiNfa& m, const LassoWord& w) {
  const std::size_t n = m.num_states();
  std::vector<int> u, v;
  for (const auto& s : w.spoke()) {
    auto id = m.alphabet().index_of(s);
    if (!id) return false;
    u.push_back(static_cast<int>(*id));
  }
  for (const auto& s : w.cycle()) {
    auto id = m.alphabet().index_of(s);
    if (!id) return false;
    v.push_back(static_cast<int>(*id));
  }
  auto step = [&](const std::vector<char>& from, int letter) {
    std::vector<char> to(n, 0);
    for (const auto& t : m.transitions()) {
      if (from[t.from] && t.letter == letter) to[t.to] = 1;
    }
    return to;
  };
  // plain[q][r]: r after reading v from q; acc[q][r]: and an accepting state entered.
  BoolMatrix plain(n, std::vector<char>(n, 0)), acc = plain;
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<char> cur(n, 0), hit(n, 0);
    cur[q] = 1;
    for (int letter : v) {
      std::vector<char> nc(n, 0), nh(n, 0);
      for (const auto& t : m.transitions()) {
        if (t.letter != letter) continue;
        if (cur[t.from]) {
          nc[t.to] = 1;
          if (m.accepting(t.to)) nh[t.to] = 1;
        }
        if (hit[t.from]) nh[t.to] = 1;
      }
      cur = nc;
      hit = nh;
    }
    for (std::size_t r = 0; r < n; ++r) {
      plain[q][r] = cur[r];
      acc[q][r] = hit[r];
    }
  }
  std::vector<char> boundary(n, 0), frontier(n, 0);
  frontier[m.initial()] = 1;
  for (int letter : u) frontier = step(frontier, letter);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t q = 0; q < n; ++q) boundary[q] |= frontier[q];
    std::vector<char> next(n, 0);
    for (std::size_t q = 0; q < n; ++q) {
      if (!frontier[q]) continue;
      for (std::size_t r = 0; r < n; ++r) next[r] |= plain[q][r];
    }
    frontier = next;
  }
  // Powers v^1 .. v^n with the accepting flag.
  BoolMatrix pw = plain, pw_acc = acc, tot_acc = acc;
  for (std::size_t j = 2; j <= n; ++j) {
    BoolMatrix np(n, std::vector<char>(n, 0)), na = np;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!pw[a][b] && !pw_acc[a][b]) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (pw[a][b] && plain[b][c]) np[a][c] = 1;
          if ((pw_acc[a][b] && plain[b][c]) || (pw[a][b] && acc[b][c])) na[a][c] = 1;
        }
      }
    }
    pw = np;
    pw_acc = na;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) tot_acc[a][b] |= na[a][b];
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (boundary[q] && tot_acc[q][q]) return true;
  }
  return false;
}

std::optional<bool> counter_member(const CounterAutomaton& m, const LassoWord& w, unsigned cap) {
  if (m.counters() != 1) throw UnsupportedMachine("oracle handles 1-counter machines");
  return stack_search(from_counter(m), Track(w, m.alphabet()), cap);
}

std::optional<bool> pda_member(const PushdownAutomaton& m, const LassoWord& w, unsigned cap) {
  return stack_search(from_pda(m), Track(w, m.alphabet()), cap);
}

std::optional<bool> counter_nonempty(const CounterAutomaton& m, unsigned cap) {
  if (m.counters() != 1) throw UnsupportedMachine("oracle handles 1-counter machines");
  return stack_search(from_counter(m), Track(), cap);
}

std::optional<bool> pda_nonempty(const PushdownAutomaton& m, unsigned cap) {
  return stack_search(from_pda(m), Track(), cap);
}

bool two_tape_member(const TwoTapeAutomaton& m, const LassoWord& w1, const LassoWord& w2) {
  const Track t1(w1, m.alphabet1()), t2(w2, m.alphabet2());
  const std::size_t n1 = t1.size(), n2 = t2.size();
  const std::size_t nodes = m.num_states() * n1 * n2;
  auto node = [&](StateId q, std::size_t p1, std::size_t p2) { return (q * n1 + p1) * n2 + p2; };

  // Sets of 3-bit masks as 8-bit sets; product = pairwise OR.
  static const auto product = [] {
    std::array<std::array<std::uint8_t, 256>, 256> tab{};
    for (unsigned a = 0; a < 256; ++a) {
      for (unsigned b = 0; b < 256; ++b) {
        std::uint8_t r = 0;
        for (unsigned x = 0; x < 8; ++x) {
          if (!((a >> x) & 1)) continue;
          for (unsigned y = 0; y < 8; ++y) {
            if ((b >> y) & 1) r |= static_cast<std::uint8_t>(1u << (x | y));
          }
        }
        tab[a][b] = r;
      }
    }
    return tab;
  }();
  auto star = [](std::uint8_t s) {
    std::uint8_t r = 1;  // the empty walk
    for (;;) {
      std::uint8_t n = static_cast<std::uint8_t>(r | product[r][s]);
      if (n == r) return r;
      r = n;
    }
  };

  std::vector<std::uint8_t> R(nodes * nodes, 0);
  for (StateId q = 0; q < m.num_states(); ++q) {
    for (std::size_t p1 = 0; p1 < n1; ++p1) {
      for (std::size_t p2 = 0; p2 < n2; ++p2) {
        for (const auto& t : m.out(q)) {
          long a = static_cast<long>(p1), b = static_cast<long>(p2);
          for (LetterId x : m.word(t.u)) {
            if (a >= 0) a = t1.step(static_cast<std::size_t>(a), x);
          }
          for (LetterId x : m.word(t.v)) {
            if (b >= 0) b = t2.step(static_cast<std::size_t>(b), x);
          }
          if (a < 0 || b < 0) continue;
          unsigned mask = (m.word(t.u).empty() ? 0u : 1u) | (m.word(t.v).empty() ? 0u : 2u) |
                          (m.accepting(t.to) ? 4u : 0u);
          R[node(q, p1, p2) * nodes + node(t.to, static_cast<std::size_t>(a), static_cast<std::size_t>(b))] |=
              static_cast<std::uint8_t>(1u << mask);
        }
      }
    }
  }
  // Kleene closure.
  for (std::size_t k = 0; k < nodes; ++k) {
    const std::uint8_t s = star(R[k * nodes + k]);
    for (std::size_t i = 0; i < nodes; ++i) {
      const std::uint8_t ik = R[i * nodes + k];
      if (!ik) continue;
      const std::uint8_t through = product[ik][s];
      for (std::size_t j = 0; j < nodes; ++j) {
        const std::uint8_t kj = R[k * nodes + j];
        if (kj) R[i * nodes + j] |= product[through][kj];
      }
    }
  }
  const std::size_t init = node(m.initial(), 0, 0);
  for (std::size_t x = 0; x < nodes; ++x) {
    const bool reach = x == init || R[init * nodes + x] != 0;
    if (reach && (R[x * nodes + x] & 0x80)) return true;
  }
  return false;
}

bool phik_formatted(const Coding& c, const LassoWord& w) {
  const std::uint64_t K = c.param;
  const std::size_t span = w.spoke().size() + std::lcm(static_cast<std::size_t>(K), w.cycle().size());
  for (std::size_t n = 1; n <= span; ++n) {
    const Symbol& s = w.letter(n);
    if (n % K == 0) {
      if (!c.input.contains(s)) return false;
    } else if (s != "F") {
      return false;
    }
  }
  return true;
}

std::optional<std::size_t> first_non_image_prefix(const Coding& c, const LassoWord& w, std::size_t limit) {
  const Word full = w.prefix(limit);
  auto bad = [&](std::size_t n) { return !is_image_prefix(c, Word(full.begin(), full.begin() + n)); };
  if (!bad(limit)) return std::nullopt;
  std::size_t lo = 0, hi = limit;  // bad(hi), !bad(lo)
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    (bad(mid) ? hi : lo) = mid;
  }
  return hi;
}

Word reference_prefix(const Coding& c, const LassoWord& x, std::size_t n) {
  Word out;
  auto put = [&](const Symbol& s, std::uint64_t times) {
    for (std::uint64_t i = 0; i < times && out.size() < n; ++i) out.push_back(s);
  };
  const std::uint64_t P = c.param;
  switch (c.kind) {
    case CodingKind::Theta: {
      std::uint64_t pad = P;
      for (std::uint64_t i = 1; out.size() < n; ++i, pad *= P) {
        put(x.letter(i), 1);
        put("E", pad);
      }
      break;
    }
    case CodingKind::HK: {
      std::uint64_t pad = P;
      for (std::uint64_t i = 1; out.size() < n; ++i, pad *= P) {
        put("A", 1);
        put("0", pad);
        put(x.letter(i), 1);
        put("B", 1);
        put("0", pad * P);
      }
      break;
    }
    case CodingKind::PhiK:
      for (std::uint64_t i = 1; out.size() < n; ++i) {
        put("F", P - 1);
        put(x.letter(i), 1);
      }
      break;
    case CodingKind::HKPhiK: {
      const Word inner = reference_prefix(Coding::hk(P, c.input), x, n / P + 1);
      for (std::size_t i = 0; out.size() < n; ++i) {
        put("F", P - 1);
        put(inner[i], 1);
      }
      break;
    }
    case CodingKind::H:
      for (std::uint64_t i = 1; out.size() < n; ++i) {
        put("C", 1);
        put("0", i);
        put(x.letter(i), 1);
      }
      break;
    case CodingKind::Alpha:
      for (std::uint64_t i = 1; out.size() < n; ++i) {
        put("C", 1);
        put("0", i);
      }
      break;
  }
  return out;
}

Symbol reference_letter(const Coding& c, const LassoWord& x, const BigInt& pos) {
  if (pos < 1) throw Error("positions start at 1");
  const BigInt P = c.param;
  switch (c.kind) {
    case CodingKind::PhiK:
      return pos % P == 0 ? x.letter(BigInt(pos / P).convert_to<std::uint64_t>()) : Symbol("F");
    case CodingKind::HKPhiK:
      return pos % P == 0 ? reference_letter(Coding::hk(c.param, c.input), x, BigInt(pos / P)) : Symbol("F");
    default:
      break;
  }
  // Block i as a list of (symbol, run length); x(i) appears as an empty symbol.
  BigInt start = 1, pw = P;
  for (std::uint64_t i = 1;; ++i) {
    std::vector<std::pair<Symbol, BigInt>> runs;
    switch (c.kind) {
      case CodingKind::Theta:
        runs = {{"", 1}, {"E", pw}};
        break;
      case CodingKind::HK:
        runs = {{"A", 1}, {"0", pw}, {"", 1}, {"B", 1}, {"0", pw * P}};
        break;
      case CodingKind::H:
        runs = {{"C", 1}, {"0", i}, {"", 1}};
        break;
      case CodingKind::Alpha:
        runs = {{"C", 1}, {"0", i}};
        break;
      default:
        throw Error("reference_letter: unsupported coding");
    }
    for (const auto& [sym, len] : runs) {
      if (pos < start + len) return sym.empty() ? x.letter(i) : sym;
      start += len;
    }
    pw *= P;
  }
}

BigInt predicted_emission(const Coding& c, std::uint64_t m) {
  const BigInt P = c.param;
  BigInt pos = 0;
  switch (c.kind) {
    case CodingKind::Theta:
      // x(i) E^{S^i}
      for (std::uint64_t i = 1; i < m; ++i) pos += 1 + boost::multiprecision::pow(P, static_cast<unsigned>(i));
      return pos + 1;
    case CodingKind::HK:
    case CodingKind::HKPhiK:
      // A 0^{K^i} x(i) B 0^{K^{i+1}}
      for (std::uint64_t i = 1; i < m; ++i) {
        pos += 3 + boost::multiprecision::pow(P, static_cast<unsigned>(i)) +
               boost::multiprecision::pow(P, static_cast<unsigned>(i + 1));
      }
      pos += 2 + boost::multiprecision::pow(P, static_cast<unsigned>(m));
      return c.kind == CodingKind::HK ? pos : pos * P;
    case CodingKind::PhiK:
      return P * m;
    case CodingKind::H:
      // C 0^i x(i)
      for (std::uint64_t i = 1; i < m; ++i) pos += i + 2;
      return pos + m + 2;
    case CodingKind::Alpha:
      break;
  }
  throw Error("alpha emits no input letters");
}

namespace {

LassoWord every_other(const LassoWord& w, std::uint64_t offset) {
  const std::size_t m = w.spoke().size() / 2 + 1;
  Word u, v;
  for (std::size_t n = 1; n <= m; ++n) u.push_back(w.letter(2 * n - offset));
  for (std::size_t n = m + 1; n <= m + w.cycle().size(); ++n) v.push_back(w.letter(2 * n - offset));
  return LassoWord(u, v);
}

}  // namespace

LassoWord odd_letters(const LassoWord& w) { return every_other(w, 1); }
LassoWord even_letters(const LassoWord& w) { return every_other(w, 0); }

LassoWord random_lasso(Rng& rng, const Alphabet& a, std::size_t max_total) {
  std::uniform_int_distribution<std::size_t> total(1, max_total), letter(0, a.size() - 1);
  const std::size_t t = total(rng);
  const std::size_t lv = std::uniform_int_distribution<std::size_t>(1, t)(rng);
  Word u, v;
  for (std::size_t i = 0; i < t - lv; ++i) u.push_back(a[letter(rng)]);
  for (std::size_t i = 0; i < lv; ++i) v.push_back(a[letter(rng)]);
  return LassoWord(u, v);
}

std::vector<LassoWord> all_lassos(const Alphabet& a, std::size_t max_total) {
  std::vector<LassoWord> out;
  std::set<std::string> seen;
  for (std::size_t t = 1; t <= max_total; ++t) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < t; ++i) count *= a.size();
    for (std::size_t code = 0; code < count; ++code) {
      Word letters;
      std::size_t c = code;
      for (std::size_t i = 0; i < t; ++i) {
        letters.push_back(a[c % a.size()]);
        c /= a.size();
      }
      for (std::size_t lv = 1; lv <= t; ++lv) {
        LassoWord w(Word(letters.begin(), letters.end() - static_cast<long>(lv)),
                    Word(letters.end() - static_cast<long>(lv), letters.end()));
        if (seen.insert(w.to_string()).second) out.push_back(w);
      }
    }
  }
  return out;
}

namespace {

std::vector<bool> random_accepting(Rng& rng, std::size_t states) {
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> acc(states);
  for (std::size_t i = 0; i < states; ++i) acc[i] = coin(rng);
  return acc;
}

}  // namespace

BuchiNfa random_nfa(Rng& rng, const Alphabet& a, std::size_t states, double density) {
  std::bernoulli_distribution edge(density);
  std::vector<NfaTransition> delta;
  for (StateId q = 0; q < states; ++q) {
    for (LetterId x = 0; x < a.size(); ++x) {
      for (StateId r = 0; r < states; ++r) {
        if (edge(rng)) delta.push_back({q, r, x});
      }
    }
  }
  return BuchiNfa(a, StateSpace::generated("q", static_cast<std::uint32_t>(states)), 0, random_accepting(rng, states),
                  std::move(delta));
}

CounterAutomaton random_counter(Rng& rng, const Alphabet& a, std::size_t states, double density, bool realtime,
                                unsigned counters) {
  std::bernoulli_distribution edge(density), lambda(0.3);
  std::uniform_int_distribution<int> upd(0, 2);
  std::vector<CounterTransition> delta;
  const unsigned guards = 1u << counters;
  for (StateId q = 0; q < states; ++q) {
    for (unsigned letter = 0; letter <= a.size(); ++letter) {
      const bool is_lambda = letter == a.size();
      if (is_lambda && realtime) continue;
      for (unsigned g = 0; g < guards; ++g) {
        for (StateId r = 0; r < states; ++r) {
          if (!edge(rng) || (is_lambda && !lambda(rng))) continue;
          CounterTransition t{q, r, is_lambda ? kLambda : static_cast<LetterId>(letter),
                              static_cast<std::uint16_t>(g), 0, 0};
          for (unsigned c = 0; c < counters; ++c) {
            const int u = upd(rng);
            if (u == 1) t.inc |= static_cast<std::uint16_t>(1u << c);
            if (u == 2 && ((g >> c) & 1)) t.dec |= static_cast<std::uint16_t>(1u << c);
          }
          delta.push_back(t);
        }
      }
    }
  }
  return CounterAutomaton(a, counters, realtime, StateSpace::generated("q", static_cast<std::uint32_t>(states)), 0,
                          random_accepting(rng, states), std::move(delta));
}

PushdownAutomaton random_pda(Rng& rng, const Alphabet& a, std::size_t states, double density) {
  const Alphabet stack({"Z", "A", "B"});
  std::bernoulli_distribution edge(density), lambda(0.2);
  // Replacement strings (top first) per top symbol.
  const std::vector<std::vector<std::uint16_t>> on_bottom = {{0}, {1, 0}, {2, 0}};
  const std::vector<std::vector<std::uint16_t>> on_top = {{}, {1}, {2}, {1, 1}, {2, 1}};
  std::uniform_int_distribution<std::size_t> pick_b(0, on_bottom.size() - 1), pick_t(0, on_top.size() - 1);
  std::vector<PdaTransition> delta;
  for (StateId q = 0; q < states; ++q) {
    for (unsigned letter = 0; letter <= a.size(); ++letter) {
      const bool is_lambda = letter == a.size();
      for (std::uint16_t top = 0; top < 3; ++top) {
        for (StateId r = 0; r < states; ++r) {
          if (!edge(rng) || (is_lambda && !lambda(rng))) continue;
          std::vector<std::uint16_t> push = top == 0 ? on_bottom[pick_b(rng)] : on_top[pick_t(rng)];
          if (top == 2 && !push.empty() && push.back() == 1) push.back() = 2;
          delta.push_back({q, r, is_lambda ? kLambda : static_cast<LetterId>(letter), top, push});
        }
      }
    }
  }
  return PushdownAutomaton(a, stack, StateSpace::generated("q", static_cast<std::uint32_t>(states)), 0,
                           random_accepting(rng, states), std::move(delta));
}

TwoTapeAutomaton random_two_tape(Rng& rng, const Alphabet& a1, const Alphabet& a2, std::size_t states,
                                 double density) {
  std::vector<LetterWord> words;
  std::map<std::pair<int, LetterWord>, std::uint32_t> index;
  auto intern = [&](int tape, LetterWord w) {
    auto [it, fresh] = index.try_emplace({tape, w}, static_cast<std::uint32_t>(words.size()));
    if (fresh) words.push_back(w);
    return it->second;
  };
  auto words_up_to_two = [](const Alphabet& a) {
    std::vector<LetterWord> out{{}};
    for (LetterId x = 0; x < a.size(); ++x) out.push_back({x});
    for (LetterId x = 0; x < a.size(); ++x) {
      for (LetterId y = 0; y < a.size(); ++y) out.push_back({x, y});
    }
    return out;
  };
  const auto w1 = words_up_to_two(a1), w2 = words_up_to_two(a2);
  std::uniform_int_distribution<std::size_t> p1(0, w1.size() - 1), p2(0, w2.size() - 1);
  const std::size_t per_state = std::max<std::size_t>(1, static_cast<std::size_t>(density * 8));
  std::uniform_int_distribution<std::size_t> count(0, per_state);
  std::uniform_int_distribution<StateId> target(0, static_cast<StateId>(states - 1));
  std::vector<TwoTapeTransition> delta;
  for (StateId q = 0; q < states; ++q) {
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
      delta.push_back({q, target(rng), intern(1, w1[p1(rng)]), intern(2, w2[p2(rng)])});
    }
  }
  return TwoTapeAutomaton(a1, a2, StateSpace::generated("q", static_cast<std::uint32_t>(states)), 0,
                          random_accepting(rng, states), std::move(words), std::move(delta));
}

std::optional<std::uint64_t> max_accepting_visits(const CounterAutomaton& m, const Stream& x, std::uint64_t n,
                                                  std::uint32_t counter_cap, std::size_t closure_cap) {
  using Config = std::pair<StateId, std::vector<std::uint32_t>>;
  std::map<Config, std::uint64_t> live;
  auto fires = [&](const CounterTransition& t, const std::vector<std::uint32_t>& c) {
    for (unsigned i = 0; i < m.counters(); ++i) {
      if (((t.nonzero >> i) & 1) != (c[i] > 0 ? 1u : 0u)) return false;
    }
    return true;
  };
  auto apply = [&](const CounterTransition& t, std::vector<std::uint32_t> c) -> std::optional<std::vector<std::uint32_t>> {
    for (unsigned i = 0; i < m.counters(); ++i) {
      if ((t.dec >> i) & 1) --c[i];
      if ((t.inc >> i) & 1) {
        if (c[i] >= counter_cap) return std::nullopt;
        ++c[i];
      }
    }
    return c;
  };
  auto insert = [](std::map<Config, std::uint64_t>& into, Config c, std::uint64_t acc) {
    auto [it, fresh] = into.try_emplace(std::move(c), acc);
    if (!fresh && it->second < acc) {
      it->second = acc;
      return true;
    }
    return fresh;
  };
  auto closure = [&](std::map<Config, std::uint64_t>& set) {
    std::deque<Config> work;
    for (const auto& [c, _] : set) work.push_back(c);
    std::size_t moves = 0;
    while (!work.empty() && moves < closure_cap) {
      Config c = std::move(work.front());
      work.pop_front();
      const std::uint64_t acc = set.at(c);
      for (const auto& t : m.out(c.first)) {
        if (t.letter != kLambda || !fires(t, c.second)) continue;
        ++moves;
        auto next = apply(t, c.second);
        if (!next) continue;
        Config d{t.to, std::move(*next)};
        if (insert(set, d, acc + (m.accepting(t.to) ? 1 : 0))) work.push_back(std::move(d));
      }
    }
  };
  live.emplace(Config{m.initial(), std::vector<std::uint32_t>(m.counters(), 0)}, m.accepting(m.initial()) ? 1 : 0);
  closure(live);
  for (std::uint64_t step = 1; step <= n && !live.empty(); ++step) {
    const auto letter = m.alphabet().index_of(x->letter(step));
    std::map<Config, std::uint64_t> next;
    if (letter) {
      for (const auto& [c, acc] : live) {
        for (const auto& t : m.out(c.first)) {
          if (t.letter != *letter || !fires(t, c.second)) continue;
          auto d = apply(t, c.second);
          if (d) insert(next, Config{t.to, std::move(*d)}, acc + (m.accepting(t.to) ? 1 : 0));
        }
      }
    }
    closure(next);
    live = std::move(next);
  }
  if (live.empty()) return std::nullopt;
  std::uint64_t best = 0;
  for (const auto& [c, acc] : live) best = std::max(best, acc);
  return best;
}

TuringMachine random_tm(Rng& rng, std::size_t states, TmAcceptance mode) {
  const Alphabet input = Alphabet::sigma();
  const Alphabet tape({"a", "b", "c"});
  std::bernoulli_distribution edge(0.35);
  std::uniform_int_distribution<int> mv(-1, 1);
  std::vector<TmTransition> delta;
  for (StateId q = 0; q < states; ++q) {
    for (std::uint16_t s = 0; s < tape.size(); ++s) {
      for (StateId r = 0; r < states; ++r) {
        for (std::uint16_t w = 0; w < tape.size(); ++w) {
          if (edge(rng)) delta.push_back(TmTransition{q, s, r, w, static_cast<omegared::Move>(mv(rng))});
        }
      }
    }
  }
  return TuringMachine(input, tape, mode, StateSpace::generated("q", static_cast<std::uint32_t>(states)), 0,
                       random_accepting(rng, states), std::move(delta));
}

}  // namespace omegared::oracle
