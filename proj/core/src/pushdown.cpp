// Buchi pushdown emptiness by summaries over stack heads.
//
// A head is a pair (control state, top symbol). Three kinds of edges connect
// heads: a rule that replaces the top, a rule that pushes (edge to the new
// top), and a summary edge that pushes and later pops back to the same level.
// The summary relation PR(h) = {(p, flags)} lists the states in which a run
// starting at head h can pop h's top symbol, together with whether it visited
// an accepting state (bit 0) and read a letter (bit 1). It is saturated with a
// worklist, only over heads reachable from the initial configuration.
//
// An infinite accepting run exists iff some reachable head h can return to
// itself (with possibly more stack below) through a loop that visits an
// accepting state and reads a letter. Such loops are exactly the cycles of the
// head graph, so the test is a strongly connected component whose internal
// edges carry both flags.

#include <deque>
#include <unordered_map>

#include "graph.hpp"
#include "lasso_phases.hpp"
#include "omegared/error.hpp"
#include "omegared/semantics.hpp"

namespace omegared {

namespace detail {

struct PdsRule {
  std::uint64_t to;
  LetterId letter;
  std::uint8_t push_len;  // 0 pops, 1 replaces, 2 pushes
  std::uint16_t push[2];  // push[0] becomes the top
};

class PdsProvider {
 public:
  virtual ~PdsProvider() = default;
  virtual std::uint64_t initial() const = 0;
  virtual std::uint16_t bottom() const { return 0; }
  virtual bool accepting(std::uint64_t state) const = 0;
  virtual void rules(std::uint64_t state, std::uint16_t top, std::vector<PdsRule>& out) const = 0;
};

// Pushes longer than two symbols are split through private intermediate states.
class PdaProvider final : public PdsProvider {
 public:
  explicit PdaProvider(const PushdownAutomaton& m) : m_(m) {
    std::uint64_t next = m.num_states();
    for (std::size_t i = 0; i < m.transitions().size(); ++i) {
      const auto n = m.transitions()[i].push.size();
      if (n > 2) {
        long_.push_back({next, static_cast<std::uint32_t>(i)});
        next += n - 2;
      }
    }
  }

  std::uint64_t initial() const override { return m_.initial(); }
  bool accepting(std::uint64_t s) const override { return s < m_.num_states() && m_.accepting(static_cast<StateId>(s)); }

  void rules(std::uint64_t s, std::uint16_t top, std::vector<PdsRule>& out) const override {
    out.clear();
    if (s < m_.num_states()) {
      auto all = m_.out(static_cast<StateId>(s));
      for (std::size_t k = 0; k < all.size(); ++k) {
        const auto& t = all[k];
        if (t.top != top) continue;
        const auto n = t.push.size();
        if (n <= 2) {
          PdsRule r{t.to, t.letter, static_cast<std::uint8_t>(n), {0, 0}};
          for (std::size_t j = 0; j < n; ++j) r.push[j] = t.push[j];
          out.push_back(r);
        } else {
          const std::size_t index = static_cast<std::size_t>(&t - m_.transitions().data());
          out.push_back({mid_base(index), t.letter, 2, {t.push[n - 2], t.push[n - 1]}});
        }
      }
      return;
    }
    // intermediate state k of a long push: expects w[n-1-k] on top
    auto it = std::upper_bound(long_.begin(), long_.end(), s,
                               [](std::uint64_t v, const std::pair<std::uint64_t, std::uint32_t>& e) { return v < e.first; });
    --it;
    const auto& t = m_.transitions()[it->second];
    const std::size_t n = t.push.size();
    const std::size_t k = static_cast<std::size_t>(s - it->first) + 1;
    if (top != t.push[n - 1 - k]) return;
    const std::uint64_t to = (k == n - 2) ? std::uint64_t(t.to) : s + 1;
    out.push_back({to, kLambda, 2, {t.push[n - 2 - k], t.push[n - 1 - k]}});
  }

 private:
  std::uint64_t mid_base(std::size_t index) const {
    for (const auto& e : long_) {
      if (e.second == index) return e.first;
    }
    throw Error("internal: long push without intermediate states");
  }

  const PushdownAutomaton& m_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> long_;  // first intermediate id, transition index
};

// Counter value c is the stack A^c Z0 (Z0 = 0, A = 1).
class CounterProvider final : public PdsProvider {
 public:
  explicit CounterProvider(const CounterAutomaton& m) : m_(m) {
    if (m.counters() != 1) throw UnsupportedMachine("pushdown procedures need exactly one counter");
  }
  std::uint64_t initial() const override { return m_.initial(); }
  bool accepting(std::uint64_t s) const override { return m_.accepting(static_cast<StateId>(s)); }
  void rules(std::uint64_t s, std::uint16_t top, std::vector<PdsRule>& out) const override {
    out.clear();
    for (const auto& t : m_.out(static_cast<StateId>(s))) {
      const bool nonzero = t.nonzero & 1;
      if (nonzero != (top == 1)) continue;
      if (t.inc & 1) out.push_back({t.to, t.letter, 2, {1, top}});
      else if (t.dec & 1) out.push_back({t.to, t.letter, 0, {0, 0}});
      else out.push_back({t.to, t.letter, 1, {top, 0}});
    }
  }

 private:
  const CounterAutomaton& m_;
};

// Synchronous product with the phases of a lasso; letters become lambda-free
// progress through u.v.
class LassoProductProvider final : public PdsProvider {
 public:
  LassoProductProvider(const PdsProvider& base, const LassoTrack& track) : base_(base), track_(track) {}
  std::uint64_t initial() const override { return base_.initial() * track_.phases.total; }
  bool accepting(std::uint64_t s) const override { return base_.accepting(s / track_.phases.total); }
  void rules(std::uint64_t s, std::uint16_t top, std::vector<PdsRule>& out) const override {
    const std::uint64_t T = track_.phases.total;
    const auto phase = static_cast<std::uint32_t>(s % T);
    base_.rules(s / T, top, scratch_);
    out.clear();
    for (auto r : scratch_) {
      if (r.letter == kLambda) {
        r.to = r.to * T + phase;
      } else if (r.letter == track_.letters[phase]) {
        r.to = r.to * T + track_.phases.next(phase);
      } else {
        continue;
      }
      out.push_back(r);
    }
  }

 private:
  const PdsProvider& base_;
  const LassoTrack& track_;
  mutable std::vector<PdsRule> scratch_;
};

class PdsEngine {
 public:
  explicit PdsEngine(const PdsProvider& p) : p_(p) {}

  // Saturates and returns true iff an accepting loop is reachable.
  bool run(bool want_witness) {
    root_ = reach(p_.initial(), p_.bottom());
    saturate();
    Digraph g = graph();
    comp_ = strongly_connected_components(g);
    auto info = component_info(g, comp_);
    for (std::uint32_t c = 0; c < info.label_union.size(); ++c) {
      if (info.has_internal_edge[c] && info.label_union[c] == 3) {
        if (want_witness) build_witness(c);
        return true;
      }
    }
    return false;
  }

  std::size_t heads() const { return heads_.size(); }
  const std::vector<LetterId>& witness_spoke() const { return spoke_; }
  const std::vector<LetterId>& witness_cycle() const { return cycle_; }

 private:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  struct Head {
    std::uint64_t state;
    std::uint16_t top;
  };
  struct Edge {
    std::uint32_t from, to;
    std::uint32_t pr;  // summary edges: the PR entry of the pushed head; else kNone
    LetterId letter;
    std::uint8_t flags;
    bool same_level;
  };
  struct Caller {
    std::uint32_t head;
    std::uint16_t below;
    std::uint8_t flags;
    LetterId letter;
  };
  struct PrEntry {
    std::uint32_t head;
    std::uint64_t end;
    std::uint8_t flags;
    LetterId letter;     // pop entries: the popping rule's letter
    std::uint32_t edge;  // via entries: the same-level edge taken first; else kNone
    std::uint32_t next;  // via entries: the PR entry of the edge target
  };
  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
      return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ull ^ k.second);
    }
  };

  std::uint32_t reach(std::uint64_t state, std::uint16_t top) {
    const std::uint64_t key = state * 65536u + top;
    auto [it, fresh] = ids_.emplace(key, static_cast<std::uint32_t>(heads_.size()));
    if (fresh) {
      heads_.push_back({state, top});
      out_.emplace_back();
      level_in_.emplace_back();
      callers_.emplace_back();
      pr_of_.emplace_back();
      explore_.push_back(it->second);
    }
    return it->second;
  }

  std::uint32_t add_edge(std::uint32_t from, std::uint32_t to, std::uint8_t flags, LetterId letter, std::uint32_t pr,
                         bool same_level) {
    auto id = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({from, to, pr, letter, flags, same_level});
    out_[from].push_back(id);
    if (same_level) {
      level_in_[to].push_back(id);
      for (std::size_t i = 0; i < pr_of_[to].size(); ++i) {
        const PrEntry x = prs_[pr_of_[to][i]];
        add_pr(from, x.end, static_cast<std::uint8_t>(flags | x.flags), kLambda, id, pr_of_[to][i]);
      }
    }
    return id;
  }

  void add_pr(std::uint32_t head, std::uint64_t end, std::uint8_t flags, LetterId letter, std::uint32_t edge,
              std::uint32_t next) {
    auto& mask = pr_masks_[{head, end}];
    for (unsigned g = 0; g < 4; ++g) {
      if ((mask >> g & 1) && (g | flags) == g) return;
    }
    mask |= static_cast<std::uint8_t>(1u << flags);
    auto id = static_cast<std::uint32_t>(prs_.size());
    prs_.push_back({head, end, flags, letter, edge, next});
    pr_of_[head].push_back(id);
    pending_.push_back(id);
  }

  void summary_edge(const Caller& c, std::uint32_t pr_id) {
    const PrEntry x = prs_[pr_id];
    std::uint32_t target = reach(x.end, c.below);
    add_edge(c.head, target, static_cast<std::uint8_t>(c.flags | x.flags), c.letter, pr_id, true);
  }

  void explore(std::uint32_t h) {
    const Head head = heads_[h];
    p_.rules(head.state, head.top, rules_);
    const std::vector<PdsRule> rules = rules_;
    const std::uint8_t src = p_.accepting(head.state) ? 1 : 0;
    for (const auto& r : rules) {
      const std::uint8_t f = static_cast<std::uint8_t>(src | (r.letter != kLambda ? 2 : 0));
      if (r.push_len == 0) {
        add_pr(h, r.to, f, r.letter, kNone, kNone);
      } else if (r.push_len == 1) {
        add_edge(h, reach(r.to, r.push[0]), f, r.letter, kNone, true);
      } else {
        std::uint32_t top = reach(r.to, r.push[0]);
        add_edge(h, top, f, r.letter, kNone, false);
        Caller c{h, r.push[1], f, r.letter};
        callers_[top].push_back(c);
        for (std::size_t i = 0; i < pr_of_[top].size(); ++i) summary_edge(c, pr_of_[top][i]);
      }
    }
  }

  void saturate() {
    while (!explore_.empty() || !pending_.empty()) {
      if (!pending_.empty()) {
        const std::uint32_t id = pending_.front();
        pending_.pop_front();
        const PrEntry x = prs_[id];
        for (std::size_t i = 0; i < level_in_[x.head].size(); ++i) {
          const Edge e = edges_[level_in_[x.head][i]];
          add_pr(e.from, x.end, static_cast<std::uint8_t>(e.flags | x.flags), kLambda, level_in_[x.head][i], id);
        }
        for (std::size_t i = 0; i < callers_[x.head].size(); ++i) summary_edge(callers_[x.head][i], id);
        continue;
      }
      const std::uint32_t h = explore_.front();
      explore_.pop_front();
      explore(h);
    }
  }

  Digraph graph() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> list;
    std::vector<std::uint8_t> labels;
    list.reserve(edges_.size());
    labels.reserve(edges_.size());
    for (const auto& e : edges_) {
      list.push_back({e.from, e.to});
      labels.push_back(e.flags);
    }
    return Digraph(heads_.size(), list, labels);
  }

  // Shortest edge path from `from` to `to`, optionally restricted to component c.
  std::vector<std::uint32_t> path(std::uint32_t from, std::uint32_t to, std::uint32_t c, bool restrict) const {
    if (from == to) return {};
    std::vector<std::uint32_t> via(heads_.size(), kNone);
    std::vector<bool> seen(heads_.size(), false);
    std::deque<std::uint32_t> q{from};
    seen[from] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (auto eid : out_[v]) {
        auto w = edges_[eid].to;
        if (seen[w] || (restrict && comp_[w] != c)) continue;
        seen[w] = true;
        via[w] = eid;
        if (w == to) {
          std::vector<std::uint32_t> out;
          for (auto x = to; x != from; x = edges_[via[x]].from) out.push_back(via[x]);
          return {out.rbegin(), out.rend()};
        }
        q.push_back(w);
      }
    }
    throw Error("internal: witness path not found");
  }

  // Letters read along an edge or a PR entry, expanded with an explicit stack.
  void expand(std::vector<std::uint32_t> edge_ids, std::vector<LetterId>& out) const {
    struct Item {
      bool is_edge;
      std::uint32_t id;
    };
    std::vector<Item> stack;
    for (auto it = edge_ids.rbegin(); it != edge_ids.rend(); ++it) stack.push_back({true, *it});
    while (!stack.empty()) {
      Item item = stack.back();
      stack.pop_back();
      if (item.is_edge) {
        const Edge& e = edges_[item.id];
        if (e.letter != kLambda) out.push_back(e.letter);
        if (e.pr != kNone) stack.push_back({false, e.pr});
      } else {
        const PrEntry& x = prs_[item.id];
        if (x.edge == kNone) {
          if (x.letter != kLambda) out.push_back(x.letter);
        } else {
          stack.push_back({false, x.next});
          stack.push_back({true, x.edge});
        }
      }
      if (out.size() > 50'000'000) throw Error("witness word too long to materialize");
    }
  }

  void build_witness(std::uint32_t c) {
    std::uint32_t acc = kNone, reads = kNone;
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (comp_[e.from] != c || comp_[e.to] != c) continue;
      if ((e.flags & 1) && acc == kNone) acc = i;
      if ((e.flags & 2) && reads == kNone) reads = i;
    }
    const std::uint32_t h = edges_[acc].from;
    std::vector<std::uint32_t> loop{acc};
    auto a = path(edges_[acc].to, edges_[reads].from, c, true);
    loop.insert(loop.end(), a.begin(), a.end());
    loop.push_back(reads);
    auto b = path(edges_[reads].to, h, c, true);
    loop.insert(loop.end(), b.begin(), b.end());
    expand(path(root_, h, 0, false), spoke_);
    expand(loop, cycle_);
  }

  const PdsProvider& p_;
  std::unordered_map<std::uint64_t, std::uint32_t> ids_;
  std::vector<Head> heads_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::uint32_t>> level_in_;
  std::vector<std::vector<Caller>> callers_;
  std::vector<std::vector<std::uint32_t>> pr_of_;
  std::vector<Edge> edges_;
  std::vector<PrEntry> prs_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::uint8_t, PairHash> pr_masks_;
  std::deque<std::uint32_t> explore_;
  std::deque<std::uint32_t> pending_;
  std::vector<PdsRule> rules_;
  std::vector<std::uint32_t> comp_;
  std::uint32_t root_ = 0;
  std::vector<LetterId> spoke_, cycle_;
};

EmptinessResult emptiness(const PdsProvider& p, const Alphabet& alphabet) {
  PdsEngine engine(p);
  EmptinessResult r;
  r.empty = !engine.run(true);
  r.heads_explored = engine.heads();
  if (!r.empty) {
    Word u, v;
    for (auto a : engine.witness_spoke()) u.push_back(alphabet[a]);
    for (auto a : engine.witness_cycle()) v.push_back(alphabet[a]);
    r.witness = LassoWord(std::move(u), std::move(v));
  }
  return r;
}

bool member(const PdsProvider& p, const Alphabet& alphabet, const LassoWord& w) {
  LassoTrack track(w, alphabet);
  LassoProductProvider product(p, track);
  PdsEngine engine(product);
  return engine.run(false);
}

}  // namespace detail

EmptinessResult empty_buchi_pushdown(const PushdownAutomaton& m) {
  return detail::emptiness(detail::PdaProvider(m), m.alphabet());
}

EmptinessResult empty_buchi_pushdown(const CounterAutomaton& m) {
  return detail::emptiness(detail::CounterProvider(m), m.alphabet());
}

bool lasso_member_pushdown(const PushdownAutomaton& m, const LassoWord& w) {
  return detail::member(detail::PdaProvider(m), m.alphabet(), w);
}

bool lasso_member_pushdown(const CounterAutomaton& m, const LassoWord& w) {
  return detail::member(detail::CounterProvider(m), m.alphabet(), w);
}

bool lasso_member(const MachineSpec& spec, const LassoWord& w) {
  if (const auto* m = std::get_if<BuchiNfa>(&spec)) return lasso_member_nfa(*m, w);
  if (const auto* m = std::get_if<PushdownAutomaton>(&spec)) return lasso_member_pushdown(*m, w);
  if (const auto* m = std::get_if<CounterAutomaton>(&spec)) {
    if (m->counters() == 1) return lasso_member_pushdown(*m, w);
    throw UnsupportedMachine("exact membership is undecidable in general for " + std::to_string(m->counters()) +
                             "-counter machines; use bounded simulation");
  }
  throw UnsupportedMachine("lasso membership is not defined for " + kind_name(spec) + " machines");
}

}  // namespace omegared
