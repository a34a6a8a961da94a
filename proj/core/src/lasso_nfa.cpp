#include <deque>
#include <unordered_map>

#include "graph.hpp"
#include "lasso_phases.hpp"
#include "omegared/semantics.hpp"

namespace omegared {

// Product of the automaton with the phases of the lasso. A run on u.v^omega is
// an infinite path of the product; its infinitely visited nodes form a
// strongly connected set, so acceptance is a reachable non-trivial component
// holding an accepting node.
bool lasso_member_nfa(const BuchiNfa& m, const LassoWord& w) {
  detail::LassoTrack track(w, m.alphabet());
  const std::uint64_t T = track.phases.total;
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  std::vector<std::uint64_t> nodes;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint8_t> labels;
  auto id_of = [&](std::uint64_t key) {
    auto [it, fresh] = ids.emplace(key, static_cast<std::uint32_t>(nodes.size()));
    if (fresh) nodes.push_back(key);
    return it->second;
  };
  id_of(std::uint64_t(m.initial()) * T);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const StateId q = static_cast<StateId>(nodes[k] / T);
    const auto i = static_cast<std::uint32_t>(nodes[k] % T);
    for (const auto& t : m.out(q)) {
      if (t.letter != track.letters[i]) continue;
      auto to = id_of(std::uint64_t(t.to) * T + track.phases.next(i));
      edges.push_back({static_cast<std::uint32_t>(k), to});
      labels.push_back(m.accepting(q) ? 1 : 0);
    }
  }
  detail::Digraph g(nodes.size(), edges, labels);
  auto comp = detail::strongly_connected_components(g);
  auto info = detail::component_info(g, comp);
  for (std::size_t c = 0; c < info.label_union.size(); ++c) {
    if (info.has_internal_edge[c] && (info.label_union[c] & 1)) return true;
  }
  return false;
}

}  // namespace omegared
