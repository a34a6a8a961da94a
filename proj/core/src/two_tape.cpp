#include <unordered_map>

#include "graph.hpp"
#include "lasso_phases.hpp"
#include "omegared/semantics.hpp"

namespace omegared {

// Phase graph: nodes (state, phase on tape 1, phase on tape 2). An infinite
// successful computation eventually stays in one strongly connected component
// and, inside it, visits an accepting state and advances each tape infinitely
// often. Conversely all internal edges of a component can be threaded into one
// closed walk, so a reachable component with an accepting node, an internal
// edge reading tape 1 and one reading tape 2 yields a successful computation.
bool lasso_pair_member_two_tape(const TwoTapeAutomaton& m, const LassoWord& w1, const LassoWord& w2) {
  detail::LassoTrack t1(w1, m.alphabet1());
  detail::LassoTrack t2(w2, m.alphabet2());
  const std::uint64_t T1 = t1.phases.total, T2 = t2.phases.total;
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  std::vector<std::uint64_t> nodes;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint8_t> labels;
  auto id_of = [&](std::uint64_t key) {
    auto [it, fresh] = ids.emplace(key, static_cast<std::uint32_t>(nodes.size()));
    if (fresh) nodes.push_back(key);
    return it->second;
  };
  id_of(std::uint64_t(m.initial()) * T1 * T2);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const StateId q = static_cast<StateId>(nodes[k] / (T1 * T2));
    const auto i1 = static_cast<std::uint32_t>(nodes[k] / T2 % T1);
    const auto i2 = static_cast<std::uint32_t>(nodes[k] % T2);
    for (const auto& t : m.out(q)) {
      const auto& u = m.word(t.u);
      const auto& v = m.word(t.v);
      long long j1 = t1.read(u, i1);
      if (j1 < 0) continue;
      long long j2 = t2.read(v, i2);
      if (j2 < 0) continue;
      auto to = id_of((std::uint64_t(t.to) * T1 + std::uint64_t(j1)) * T2 + std::uint64_t(j2));
      edges.push_back({static_cast<std::uint32_t>(k), to});
      labels.push_back(static_cast<std::uint8_t>((m.accepting(q) ? 1 : 0) | (u.empty() ? 0 : 2) | (v.empty() ? 0 : 4)));
    }
  }
  detail::Digraph g(nodes.size(), edges, labels);
  auto comp = detail::strongly_connected_components(g);
  auto info = detail::component_info(g, comp);
  for (std::size_t c = 0; c < info.label_union.size(); ++c) {
    if (info.has_internal_edge[c] && info.label_union[c] == 7) return true;
  }
  return false;
}

}  // namespace omegared
