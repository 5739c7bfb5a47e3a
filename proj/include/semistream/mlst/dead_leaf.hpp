#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/core/tree.hpp"
#include "semistream/core/types.hpp"

namespace semistream {

/// A node is ignorable when it has degree two and both neighbours have
/// degree two as well.
inline std::size_t count_inodes(const AdjacencyGraph& g) {
  std::size_t c = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) != 2) continue;
    const auto nb = g.neighbors(v);
    c += g.degree(nb[0]) == 2 && g.degree(nb[1]) == 2;
  }
  return c;
}

struct DeadLeafStats {
  std::size_t op1 = 0;
  std::size_t op2 = 0;
  std::size_t op3 = 0;
};

struct DeadLeafOptions {
  bool check_invariant = true;  // outside nodes never touch expanded nodes
  DeadLeafStats* stats = nullptr;
};

namespace detail {

class DeadLeafGrower {
 public:
  DeadLeafGrower(const AdjacencyGraph& g, NodeId s, const DeadLeafOptions& opt)
      : g_(g), opt_(opt), parent_(g.num_nodes(), kNoNode), in_(g.num_nodes(), false),
        expanded_(g.num_nodes(), false) {
    in_[s] = true;
    size_ = 1;
    expand(s);
  }

  RootedTree run(NodeId s) {
    const std::size_t n = g_.num_nodes();
    while (size_ < n) {
      if (try_op1() || try_op2() || try_op3()) continue;
      throw DomainError("graph is not connected");
    }
    return RootedTree::from_parents(s, parent_);
  }

 private:
  std::size_t outside_neighbours(NodeId x) const {
    std::size_t c = 0;
    for (NodeId y : g_.neighbors(x)) c += !in_[y];
    return c;
  }

  bool is_leaf(NodeId x) const { return in_[x] && !expanded_[x]; }

  void expand(NodeId x) {
    expanded_[x] = true;
    for (NodeId y : g_.neighbors(x)) {
      if (!in_[y]) {
        in_[y] = true;
        parent_[y] = x;
        ++size_;
      }
    }
    if (opt_.check_invariant) check();
  }

  // Operation 1: a leaf with at least two neighbours outside T.
  bool try_op1() {
    for (NodeId x = 0; x < g_.num_nodes(); ++x) {
      if (is_leaf(x) && outside_neighbours(x) >= 2) {
        expand(x);
        if (opt_.stats) ++opt_.stats->op1;
        return true;
      }
    }
    return false;
  }

  // Operation 2: an outside node with at least two neighbours in T; expand
  // one of them (all are leaves by the invariant).
  bool try_op2() {
    for (NodeId x = 0; x < g_.num_nodes(); ++x) {
      if (in_[x]) continue;
      std::size_t inside = 0;
      NodeId first = kNoNode;
      for (NodeId y : g_.neighbors(x)) {
        if (in_[y]) {
          ++inside;
          if (first == kNoNode) first = y;
        }
      }
      if (inside >= 2) {
        expand(first);
        if (opt_.stats) ++opt_.stats->op2;
        return true;
      }
    }
    return false;
  }

  // Operation 3: walk the degree-two chain x_1, x_2, ... hanging off a leaf
  // x_0 with one outside neighbour, then expand x_0, ..., x_k in order.
  bool try_op3() {
    NodeId x0 = kNoNode;
    for (NodeId x = 0; x < g_.num_nodes() && x0 == kNoNode; ++x) {
      if (is_leaf(x) && outside_neighbours(x) == 1) x0 = x;
    }
    if (x0 == kNoNode) return false;
    std::vector<NodeId> chain{x0};
    for (NodeId y : g_.neighbors(x0)) {
      if (!in_[y]) chain.push_back(y);
    }
    for (;;) {
      const NodeId prev = chain[chain.size() - 2];
      const NodeId cur = chain.back();
      if (g_.degree(cur) != 2) break;
      bool all_out = true;
      NodeId next = kNoNode;
      for (NodeId y : g_.neighbors(cur)) {
        if (y == prev) continue;
        all_out = all_out && !in_[y];
        next = y;
      }
      if (!all_out || next == kNoNode || std::find(chain.begin(), chain.end(), next) != chain.end()) break;
      chain.push_back(next);
    }
    for (NodeId x : chain) expand(x);
    if (opt_.stats) ++opt_.stats->op3;
    return true;
  }

  void check() const {
    for (NodeId x = 0; x < g_.num_nodes(); ++x) {
      if (!expanded_[x]) continue;
      for (NodeId y : g_.neighbors(x)) {
        if (!in_[y]) {
          throw std::logic_error("outside node " + std::to_string(y) + " touches expanded node " + std::to_string(x));
        }
      }
    }
  }

  const AdjacencyGraph& g_;
  DeadLeafOptions opt_;
  std::vector<NodeId> parent_;
  std::vector<bool> in_;
  std::vector<bool> expanded_;
  std::size_t size_ = 0;
};

}  // namespace detail

/// Spanning tree grown from s by the dead-leaf expansion order, trying
/// Operation 1, then 2, then 3, with the lowest node id winning ties. The
/// result has at least (n - inode(G)) / 10 leaves.
inline RootedTree dead_leaf_tree(const AdjacencyGraph& g, NodeId s, const DeadLeafOptions& opt = {}) {
  if (g.num_nodes() < 2) throw DomainError("dead_leaf_tree needs at least two nodes");
  if (s >= g.num_nodes()) throw DomainError("root out of range");
  detail::DeadLeafGrower grower(g, s, opt);
  return grower.run(s);
}

}  // namespace semistream
