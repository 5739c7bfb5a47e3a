#pragma once

#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/core/tree.hpp"

namespace semistream::oracle {

/// True iff t spans g using edges of g and every edge of g joins an
/// ancestor-descendant pair of t (the defining property of a DFS tree).
inline bool is_dfs_tree(const AdjacencyGraph& g, const RootedTree& t) {
  const std::size_t n = g.num_nodes();
  if (t.size() != n || !t.is_spanning_tree_of(g)) return false;
  // Entry/exit times from an explicit-stack traversal.
  std::vector<std::vector<NodeId>> kids(n);
  for (NodeId v = 0; v < n; ++v) {
    if (t.parent(v) != kNoNode) kids[t.parent(v)].push_back(v);
  }
  std::vector<std::size_t> tin(n), tout(n), next(n, 0);
  std::size_t clock = 0;
  std::vector<NodeId> stack{t.root()};
  tin[t.root()] = clock++;
  while (!stack.empty()) {
    const NodeId x = stack.back();
    if (next[x] < kids[x].size()) {
      const NodeId c = kids[x][next[x]++];
      tin[c] = clock++;
      stack.push_back(c);
    } else {
      tout[x] = clock++;
      stack.pop_back();
    }
  }
  auto ancestor = [&](NodeId a, NodeId b) { return tin[a] <= tin[b] && tout[b] <= tout[a]; };
  for (const Edge& e : g.edges()) {
    if (!ancestor(e.u, e.v) && !ancestor(e.v, e.u)) return false;
  }
  return true;
}

}  // namespace semistream::oracle
