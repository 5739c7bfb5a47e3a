#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/core/tree.hpp"
#include "semistream/core/union_find.hpp"
#include "semistream/mlst/sparsifier.hpp"

namespace semistream {

struct ExpansionOptions {
  std::size_t local_search_max_nodes = 300;  // leaf-swap polishing only below this size
};

namespace detail {

// Leafy forest by expansion rules, lowest id first:
//   a) a forest leaf with >= 2 outside neighbours is expanded;
//   b) a forest leaf x with one outside neighbour y, where y has >= 2
//      outside neighbours, is expanded and then y is expanded;
//   c) otherwise an outside node with >= 3 outside neighbours starts a
//      new tree together with those neighbours.
class LeafyForest {
 public:
  explicit LeafyForest(const AdjacencyGraph& g) : g_(g), in_(g.num_nodes(), false), expanded_(g.num_nodes(), false) {}

  std::vector<Edge> grow() {
    while (rule_a() || rule_b() || rule_c()) {
    }
    return edges_;
  }

 private:
  std::size_t outside(NodeId x) const {
    std::size_t c = 0;
    for (NodeId y : g_.neighbors(x)) c += !in_[y];
    return c;
  }

  void expand(NodeId x) {
    expanded_[x] = true;
    for (NodeId y : g_.neighbors(x)) {
      if (!in_[y]) {
        in_[y] = true;
        edges_.emplace_back(x, y);
      }
    }
  }

  bool rule_a() {
    for (NodeId x = 0; x < g_.num_nodes(); ++x) {
      if (in_[x] && !expanded_[x] && outside(x) >= 2) {
        expand(x);
        return true;
      }
    }
    return false;
  }

  bool rule_b() {
    for (NodeId x = 0; x < g_.num_nodes(); ++x) {
      if (!in_[x] || expanded_[x] || outside(x) != 1) continue;
      NodeId y = kNoNode;
      for (NodeId w : g_.neighbors(x)) {
        if (!in_[w]) y = w;
      }
      if (outside(y) >= 2) {
        expand(x);
        expand(y);
        return true;
      }
    }
    return false;
  }

  bool rule_c() {
    for (NodeId x = 0; x < g_.num_nodes(); ++x) {
      if (!in_[x] && outside(x) >= 3) {
        in_[x] = true;
        expand(x);
        return true;
      }
    }
    return false;
  }

  const AdjacencyGraph& g_;
  std::vector<bool> in_;
  std::vector<bool> expanded_;
  std::vector<Edge> edges_;
};

inline int leaf_gain(std::size_t before, std::size_t after) {
  return static_cast<int>(after == 1) - static_cast<int>(before == 1);
}

// Completes a forest to a spanning tree, preferring edges whose endpoints
// gain leaves (degree 0 -> 1) over edges that turn leaves into inner nodes.
inline std::vector<Edge> complete_forest(const AdjacencyGraph& g, std::vector<Edge> forest) {
  const std::size_t n = g.num_nodes();
  UnionFind uf(n);
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : forest) {
    uf.unite(e.u, e.v);
    ++deg[e.u];
    ++deg[e.v];
  }
  const auto all = g.edges();
  for (int target = 2; target >= -2 && forest.size() + 1 < n; --target) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Edge& e : all) {
        if (uf.same(e.u, e.v)) continue;
        const int gain = leaf_gain(deg[e.u], deg[e.u] + 1) + leaf_gain(deg[e.v], deg[e.v] + 1);
        if (gain < target) continue;
        uf.unite(e.u, e.v);
        ++deg[e.u];
        ++deg[e.v];
        forest.push_back(e);
        changed = true;
      }
    }
  }
  return forest;
}

// Edge swaps that strictly increase the leaf count: add a non-tree edge,
// drop an edge on the cycle it closes.
inline void leaf_swaps(const AdjacencyGraph& g, std::vector<Edge>& tree) {
  const std::size_t n = g.num_nodes();
  for (std::size_t round = 0; round < n; ++round) {
    const auto rt = RootedTree::from_edges(n, 0, tree);
    auto deg = rt.tree_degrees();
    std::vector<Edge> sorted_tree = tree;
    std::sort(sorted_tree.begin(), sorted_tree.end());
    bool improved = false;
    for (const Edge& add : g.edges()) {
      if (std::binary_search(sorted_tree.begin(), sorted_tree.end(), add)) continue;
      // Cycle edges: walk both endpoints up to their meeting point.
      std::vector<Edge> cycle;
      NodeId a = add.u, b = add.v;
      while (a != b) {
        if (rt.depth(a) >= rt.depth(b)) {
          cycle.emplace_back(a, rt.parent(a));
          a = rt.parent(a);
        } else {
          cycle.emplace_back(b, rt.parent(b));
          b = rt.parent(b);
        }
      }
      for (const Edge& drop : cycle) {
        std::vector<NodeId> touched = {add.u, add.v, drop.u, drop.v};
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        int gain = 0;
        for (NodeId x : touched) {
          std::size_t after = deg[x];
          after += (x == add.u) + (x == add.v);
          after -= (x == drop.u) + (x == drop.v);
          gain += leaf_gain(deg[x], after);
        }
        if (gain > 0) {
          tree.erase(std::find(tree.begin(), tree.end(), drop));
          tree.push_back(add);
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
    if (!improved) return;
  }
}

}  // namespace detail

/// In-memory max-leaf heuristic: leafy forest by expansion rules, then a
/// leaf-aware completion to a spanning tree, then leaf-increasing swaps on
/// small graphs. Rooted at node 0.
inline RootedTree expansion_mlst(const AdjacencyGraph& g, const ExpansionOptions& opt = {}) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw DomainError("empty graph");
  auto forest = detail::LeafyForest(g).grow();
  auto tree = detail::complete_forest(g, std::move(forest));
  if (tree.size() + 1 != n) throw DomainError("graph is not connected");
  if (n <= opt.local_search_max_nodes) detail::leaf_swaps(g, tree);
  std::sort(tree.begin(), tree.end());
  return RootedTree::from_edges(n, 0, tree);
}

struct MlstResult {
  RootedTree tree;
  std::size_t k = 0;
  std::size_t sparsifier_edges = 0;
};

/// Sparsifier in one pass, then the in-memory heuristic on it. The tree
/// uses sparsifier edges only, so it is a spanning tree of G.
inline MlstResult approx_mlst(const GraphStream& stream, Meter& meter, double epsilon,
                              const SparsifierOptions& sopt = {}, const ExpansionOptions& eopt = {}) {
  const auto sp = build_sparsifier(stream, meter, epsilon, sopt);
  const auto h = AdjacencyGraph::from_edges(stream.num_nodes(), sp.edges);
  return {expansion_mlst(h, eopt), sp.k, sp.edges.size()};
}

}  // namespace semistream
