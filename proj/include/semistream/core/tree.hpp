#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/core/types.hpp"

namespace semistream {

/// Spanning tree given by parent pointers.
///
/// Invariants (checked by from_parents): parent(root) = none,
/// depth(v) = depth(parent(v)) + 1, all n nodes hang off the root.
class RootedTree {
 public:
  RootedTree() = default;

  static RootedTree from_parents(NodeId root, std::vector<NodeId> parent) {
    const std::size_t n = parent.size();
    if (root >= n) throw std::invalid_argument("tree root out of range");
    if (parent[root] != kNoNode) throw std::invalid_argument("root has a parent");
    RootedTree t;
    t.root_ = root;
    t.parent_ = std::move(parent);
    t.depth_.assign(n, kInfDist);
    t.depth_[root] = 0;
    // Resolve depths along parent chains; a chain longer than n is a cycle.
    std::vector<NodeId> chain;
    for (NodeId v = 0; v < n; ++v) {
      chain.clear();
      NodeId x = v;
      while (t.depth_[x] == kInfDist) {
        chain.push_back(x);
        const NodeId p = t.parent_[x];
        if (p == kNoNode) throw std::invalid_argument("node " + std::to_string(x) + " has no parent");
        if (p >= n) throw std::invalid_argument("parent id out of range");
        if (chain.size() > n) throw std::invalid_argument("parent pointers contain a cycle");
        x = p;
      }
      Dist d = t.depth_[x];
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) t.depth_[*it] = ++d;
    }
    return t;
  }

  /// Builds a rooted tree from an undirected spanning-tree edge set.
  static RootedTree from_edges(std::size_t n, NodeId root, const std::vector<Edge>& edges) {
    if (n > 0 && edges.size() != n - 1) throw std::invalid_argument("spanning tree needs n-1 edges");
    std::vector<std::vector<NodeId>> adj(n);
    for (const Edge& e : edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<NodeId> parent(n, kNoNode);
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : adj[x]) {
        if (!seen[y]) {
          seen[y] = true;
          parent[y] = x;
          stack.push_back(y);
        }
      }
    }
    return from_parents(root, std::move(parent));
  }

  [[nodiscard]] std::size_t size() const { return parent_.size(); }
  [[nodiscard]] NodeId root() const { return root_; }
  [[nodiscard]] NodeId parent(NodeId v) const { return parent_[v]; }
  [[nodiscard]] Dist depth(NodeId v) const { return depth_[v]; }
  [[nodiscard]] const std::vector<NodeId>& parents() const { return parent_; }
  [[nodiscard]] const std::vector<Dist>& depths() const { return depth_; }

  [[nodiscard]] Dist height() const {
    Dist h = 0;
    for (Dist d : depth_) h = std::max(h, d);
    return h;
  }

  [[nodiscard]] std::vector<std::size_t> tree_degrees() const {
    std::vector<std::size_t> deg(size(), 0);
    for (NodeId v = 0; v < size(); ++v) {
      if (parent_[v] != kNoNode) {
        ++deg[v];
        ++deg[parent_[v]];
      }
    }
    return deg;
  }

  /// Nodes of tree degree exactly one (the root counts when it has a
  /// single child).
  [[nodiscard]] std::size_t leaf_count() const {
    std::size_t c = 0;
    for (std::size_t d : tree_degrees()) c += (d == 1);
    return c;
  }

  [[nodiscard]] std::vector<NodeId> leaves() const {
    std::vector<NodeId> out;
    const auto deg = tree_degrees();
    for (NodeId v = 0; v < size(); ++v) {
      if (deg[v] == 1) out.push_back(v);
    }
    return out;
  }

  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (NodeId v = 0; v < size(); ++v) {
      if (parent_[v] != kNoNode) out.emplace_back(v, parent_[v]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  [[nodiscard]] std::vector<std::vector<NodeId>> children() const {
    std::vector<std::vector<NodeId>> ch(size());
    for (NodeId v = 0; v < size(); ++v) {
      if (parent_[v] != kNoNode) ch[parent_[v]].push_back(v);
    }
    return ch;
  }

  /// Preorder rank of every node (children visited by increasing id).
  [[nodiscard]] std::vector<std::size_t> preorder() const {
    const auto ch = children();
    std::vector<std::size_t> rank(size(), 0);
    std::vector<NodeId> stack{root_};
    std::size_t next = 0;
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      rank[x] = next++;
      for (auto it = ch[x].rbegin(); it != ch[x].rend(); ++it) stack.push_back(*it);
    }
    return rank;
  }

  /// True iff every parent link is an edge of `g` and sizes match.
  [[nodiscard]] bool is_spanning_tree_of(const AdjacencyGraph& g) const {
    if (g.num_nodes() != size()) return false;
    for (NodeId v = 0; v < size(); ++v) {
      if (parent_[v] != kNoNode && !g.has_edge(v, parent_[v])) return false;
    }
    return true;
  }

 private:
  NodeId root_ = 0;
  std::vector<NodeId> parent_;
  std::vector<Dist> depth_;
};

/// Distances from a list of sources; row i belongs to sources[i].
struct DistanceTable {
  std::vector<NodeId> sources;
  std::vector<std::vector<Dist>> dist;

  [[nodiscard]] Dist at(std::size_t source_row, NodeId v) const { return dist[source_row][v]; }

  [[nodiscard]] std::size_t row_of(NodeId source) const {
    const auto it = std::find(sources.begin(), sources.end(), source);
    if (it == sources.end()) throw std::out_of_range("not a source of this table");
    return static_cast<std::size_t>(it - sources.begin());
  }

  [[nodiscard]] bool complete() const {
    for (const auto& row : dist) {
      if (std::find(row.begin(), row.end(), kInfDist) != row.end()) return false;
    }
    return true;
  }
};

}  // namespace semistream
