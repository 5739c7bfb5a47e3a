#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "semistream/core/types.hpp"

namespace semistream {

/// In-memory undirected simple graph with sorted neighbor lists.
///
/// Used by oracles and by the in-memory stages of streaming algorithms
/// (certificates, sparsifiers, overlay graphs). Construction rejects
/// self-loops, duplicate edges and out-of-range ids.
class AdjacencyGraph {
 public:
  AdjacencyGraph() = default;
  explicit AdjacencyGraph(std::size_t n) : adj_(n) {}

  /// Throws MalformedStream on a self-loop, duplicate, or bad id.
  static AdjacencyGraph from_edges(std::size_t n, std::span<const Edge> edges) {
    AdjacencyGraph g(n);
    for (const Edge& e : edges) {
      if (e.u == e.v) throw MalformedStream("self-loop at node " + std::to_string(e.u));
      if (e.v >= n) throw MalformedStream("node id " + std::to_string(e.v) + " out of range");
      g.adj_[e.u].push_back(e.v);
      g.adj_[e.v].push_back(e.u);
    }
    for (auto& list : g.adj_) {
      std::sort(list.begin(), list.end());
      if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
        throw MalformedStream("duplicate edge");
      }
    }
    g.m_ = edges.size();
    return g;
  }

  /// Like from_edges but silently drops duplicates (both orientations).
  static AdjacencyGraph from_edges_dedup(std::size_t n, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return from_edges(n, edges);
  }

  [[nodiscard]] std::size_t num_nodes() const { return adj_.size(); }
  [[nodiscard]] std::size_t num_edges() const { return m_; }
  [[nodiscard]] std::size_t degree(NodeId v) const { return adj_[v].size(); }
  [[nodiscard]] std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }

  [[nodiscard]] bool has_edge(NodeId a, NodeId b) const {
    if (a >= adj_.size() || b >= adj_.size()) return false;
    const auto& l = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
    const NodeId x = adj_[a].size() <= adj_[b].size() ? b : a;
    return std::binary_search(l.begin(), l.end(), x);
  }

  [[nodiscard]] std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& l : adj_) d = std::max(d, l.size());
    return d;
  }

  /// Sorted edge list (u < v, lexicographic).
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (NodeId u = 0; u < adj_.size(); ++u) {
      for (NodeId v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  /// Subgraph induced by `keep` (same id space; other nodes isolated).
  [[nodiscard]] AdjacencyGraph induced(const std::vector<bool>& keep) const {
    std::vector<Edge> es;
    for (const Edge& e : edges()) {
      if (keep[e.u] && keep[e.v]) es.push_back(e);
    }
    return from_edges(num_nodes(), es);
  }

 private:
  std::vector<std::vector<NodeId>> adj_;
  std::size_t m_ = 0;
};

/// Sort and deduplicate an edge list in place.
inline void normalize_edges(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace semistream
