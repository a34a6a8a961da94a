#pragma once

// Small directed-graph helpers shared by the decision procedures.

#include <cstdint>
#include <utility>
#include <vector>

namespace omegared::detail {

// Edge list to compressed adjacency.
struct Digraph {
  std::vector<std::uint64_t> offsets;
  std::vector<std::uint32_t> targets;
  std::vector<std::uint8_t> labels;  // per edge, parallel to targets

  Digraph() = default;
  Digraph(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
          const std::vector<std::uint8_t>& edge_labels) {
    offsets.assign(n + 1, 0);
    for (const auto& e : edges) ++offsets[e.first + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    targets.resize(edges.size());
    labels.resize(edges.size());
    std::vector<std::uint64_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto pos = fill[edges[i].first]++;
      targets[pos] = edges[i].second;
      labels[pos] = edge_labels.empty() ? 0 : edge_labels[i];
    }
  }

  std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

// Iterative Tarjan. Returns the component id of every node; ids are in reverse
// topological order of the condensation.
inline std::vector<std::uint32_t> strongly_connected_components(const Digraph& g) {
  const std::size_t n = g.size();
  constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<std::uint32_t> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<std::uint32_t, std::uint64_t>> call;  // node, next edge
  std::uint32_t counter = 0, comps = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, g.offsets[root]});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e < g.offsets[v + 1]) {
        std::uint32_t w = g.targets[e++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, g.offsets[w]});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        while (true) {
          std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
          if (w == done) break;
        }
        ++comps;
      }
    }
  }
  return comp;
}

// For each component, the OR of labels of edges inside it and whether it has
// any internal edge.
struct ComponentInfo {
  std::vector<std::uint8_t> label_union;
  std::vector<bool> has_internal_edge;
};

inline ComponentInfo component_info(const Digraph& g, const std::vector<std::uint32_t>& comp) {
  std::uint32_t count = 0;
  for (auto c : comp) count = std::max(count, c + 1);
  ComponentInfo info{std::vector<std::uint8_t>(count, 0), std::vector<bool>(count, false)};
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    for (auto e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      if (comp[g.targets[e]] == comp[v]) {
        info.has_internal_edge[comp[v]] = true;
        info.label_union[comp[v]] |= g.labels[e];
      }
    }
  }
  return info;
}

// Phase of a lasso position: 0..|u|+|v|-1, wrapping back to |u|.
struct LassoPhases {
  std::uint32_t spoke = 0;
  std::uint32_t total = 0;
  std::uint32_t next(std::uint32_t i) const { return i + 1 < total ? i + 1 : spoke; }
};

}  // namespace omegared::detail
