#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/core/tree.hpp"

namespace semistream::oracle {

inline std::vector<Dist> bfs_distances(const AdjacencyGraph& g, NodeId s) {
  std::vector<Dist> d(g.num_nodes(), kInfDist);
  std::deque<NodeId> q{s};
  d[s] = 0;
  while (!q.empty()) {
    const NodeId x = q.front();
    q.pop_front();
    for (NodeId y : g.neighbors(x)) {
      if (d[y] == kInfDist) {
        d[y] = d[x] + 1;
        q.push_back(y);
      }
    }
  }
  return d;
}

inline DistanceTable exact_distances(const AdjacencyGraph& g, const std::vector<NodeId>& sources) {
  DistanceTable t;
  t.sources = sources;
  for (NodeId s : sources) t.dist.push_back(bfs_distances(g, s));
  return t;
}

/// All-pairs distances by Floyd-Warshall; a second, unrelated route used to
/// cross-check bfs_distances.
inline std::vector<std::vector<Dist>> floyd_warshall(const AdjacencyGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<Dist>> d(n, std::vector<Dist>(n, kInfDist));
  for (NodeId v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (NodeId w : g.neighbors(v)) d[v][w] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInfDist) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[k][j] == kInfDist) continue;
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

/// Maximum distance over all pairs; kInfDist if disconnected.
inline Dist exact_diameter(const AdjacencyGraph& g) {
  Dist best = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (Dist x : bfs_distances(g, v)) best = std::max(best, x);
  }
  return best;
}

inline bool is_connected(const AdjacencyGraph& g) {
  if (g.num_nodes() == 0) return true;
  const auto d = bfs_distances(g, 0);
  return std::find(d.begin(), d.end(), kInfDist) == d.end();
}

/// Sizes of the connected components of G restricted to `keep`.
inline std::vector<std::size_t> component_sizes(const AdjacencyGraph& g, const std::vector<bool>& keep) {
  const std::size_t n = g.num_nodes();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> sizes;
  for (NodeId s = 0; s < n; ++s) {
    if (!keep[s] || seen[s]) continue;
    std::size_t count = 0;
    std::vector<NodeId> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      ++count;
      for (NodeId y : g.neighbors(x)) {
        if (keep[y] && !seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    sizes.push_back(count);
  }
  return sizes;
}

/// BFS-tree validity: every parent link is an edge of g and every depth
/// equals the exact distance from the root.
inline bool is_bfs_tree(const AdjacencyGraph& g, const RootedTree& t) {
  if (t.size() != g.num_nodes() || !t.is_spanning_tree_of(g)) return false;
  const auto d = bfs_distances(g, t.root());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (t.depth(v) != d[v]) return false;
  }
  return true;
}

}  // namespace semistream::oracle
