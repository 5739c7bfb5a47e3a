#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/oracle/distances.hpp"

namespace semistream::oracle {

/// True iff `forest` is an acyclic subset of g's edges with exactly one
/// tree per connected component of g.
inline bool is_spanning_forest(const AdjacencyGraph& g, const std::vector<Edge>& forest) {
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> label(n);
  for (NodeId v = 0; v < n; ++v) label[v] = v;
  // Naive relabeling keeps this independent of the library's union-find.
  for (const Edge& e : forest) {
    if (!g.has_edge(e.u, e.v)) return false;
    if (label[e.u] == label[e.v]) return false;
    const NodeId from = label[e.v];
    for (NodeId& l : label) {
      if (l == from) l = label[e.u];
    }
  }
  std::vector<bool> all(n, true);
  const std::size_t comps = component_sizes(g, all).size();
  return forest.size() == n - comps;
}

/// Matching check: node-disjoint edges of g, and no candidate edge of g has
/// both endpoints free.
inline bool is_maximal_matching(const AdjacencyGraph& g, const std::vector<Edge>& matching,
                                const std::function<bool(NodeId, NodeId)>& candidate) {
  std::vector<bool> used(g.num_nodes(), false);
  for (const Edge& e : matching) {
    if (!g.has_edge(e.u, e.v) || !candidate(e.u, e.v)) return false;
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = true;
  }
  for (const Edge& e : g.edges()) {
    if (!used[e.u] && !used[e.v] && candidate(e.u, e.v)) return false;
  }
  return true;
}

}  // namespace semistream::oracle
