#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/oracle/budget.hpp"
#include "semistream/oracle/distances.hpp"

namespace semistream::oracle {

namespace detail {

/// Articulation points by the iterative low-link method.
inline std::vector<bool> articulation_points(const AdjacencyGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<bool> cut(n, false);
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::vector<NodeId> parent(n, kNoNode);
  std::vector<std::size_t> next(n, 0);
  std::uint32_t timer = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (disc[root] != 0) continue;
    std::size_t root_children = 0;
    std::vector<NodeId> stack{root};
    disc[root] = low[root] = ++timer;
    while (!stack.empty()) {
      const NodeId x = stack.back();
      const auto nb = g.neighbors(x);
      if (next[x] < nb.size()) {
        const NodeId y = nb[next[x]++];
        if (disc[y] == 0) {
          parent[y] = x;
          disc[y] = low[y] = ++timer;
          if (x == root) ++root_children;
          stack.push_back(y);
        } else if (y != parent[x]) {
          low[x] = std::min(low[x], disc[y]);
        }
      } else {
        stack.pop_back();
        const NodeId p = parent[x];
        if (p != kNoNode) {
          low[p] = std::min(low[p], low[x]);
          if (p != root && low[x] >= disc[p]) cut[p] = true;
        }
      }
    }
    if (root_children >= 2) cut[root] = true;
  }
  return cut;
}

class CdsSearch {
 public:
  explicit CdsSearch(const AdjacencyGraph& g) : g_(g), n_(g.num_nodes()), in_(n_, false), dom_(n_, 0) {}

  void force(NodeId v) { add(v); }
  [[nodiscard]] std::size_t size() const { return chosen_.size(); }

  bool search(std::size_t limit) {
    if (chosen_.size() > limit) return false;
    NodeId undominated = kNoNode;
    std::size_t missing = 0;
    for (NodeId v = 0; v < n_; ++v) {
      if (dom_[v] == 0) {
        if (undominated == kNoNode) undominated = v;
        ++missing;
      }
    }
    const std::size_t room = limit - chosen_.size();
    if (undominated != kNoNode) {
      if (room == 0) return false;
      // One new node dominates at most maxdeg + 1 others.
      if (missing > room * (g_.max_degree() + 1)) return false;
      std::vector<NodeId> options{undominated};
      for (NodeId w : g_.neighbors(undominated)) options.push_back(w);
      for (NodeId w : options) {
        if (in_[w]) continue;
        add(w);
        if (search(limit)) return true;
        remove(w);
      }
      return false;
    }
    const auto comp = first_component();
    if (comp.size() == chosen_.size()) return true;
    if (room == 0) return false;
    std::vector<bool> in_comp(n_, false);
    for (NodeId v : comp) in_comp[v] = true;
    std::vector<NodeId> frontier;
    for (NodeId v : comp) {
      for (NodeId w : g_.neighbors(v)) {
        if (!in_[w] && !in_comp[w]) frontier.push_back(w);
      }
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    for (NodeId w : frontier) {
      add(w);
      if (search(limit)) return true;
      remove(w);
    }
    return false;
  }

 private:
  void add(NodeId v) {
    in_[v] = true;
    chosen_.push_back(v);
    ++dom_[v];
    for (NodeId w : g_.neighbors(v)) ++dom_[w];
  }

  void remove(NodeId v) {
    in_[v] = false;
    chosen_.erase(std::find(chosen_.begin(), chosen_.end(), v));
    --dom_[v];
    for (NodeId w : g_.neighbors(v)) --dom_[w];
  }

  std::vector<NodeId> first_component() const {
    std::vector<NodeId> comp;
    if (chosen_.empty()) return comp;
    std::vector<bool> seen(n_, false);
    std::vector<NodeId> stack{chosen_.front()};
    seen[chosen_.front()] = true;
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (NodeId y : g_.neighbors(x)) {
        if (in_[y] && !seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    return comp;
  }

  const AdjacencyGraph& g_;
  std::size_t n_;
  std::vector<bool> in_;
  std::vector<std::uint32_t> dom_;
  std::vector<NodeId> chosen_;
};

}  // namespace detail

/// Size of a minimum connected dominating set, by iterative deepening over
/// a branch-on-undominated-node search. Cut vertices are forced in (every
/// connected dominating set of a graph with n >= 3 contains them).
inline std::size_t min_connected_dominating_set(const AdjacencyGraph& g, const OracleBudget& budget = {}) {
  const std::size_t n = g.num_nodes();
  require_within(n, budget.max_cds_nodes, "min connected dominating set");
  if (n == 0) return 0;
  if (!is_connected(g)) throw DomainError("connected dominating set needs a connected graph");
  if (n <= 2) return 1;
  detail::CdsSearch search(g);
  const auto cut = detail::articulation_points(g);
  for (NodeId v = 0; v < n; ++v) {
    if (cut[v]) search.force(v);
  }
  for (std::size_t limit = std::max<std::size_t>(search.size(), 1); limit <= n; ++limit) {
    if (search.search(limit)) return limit;
  }
  return n;
}

/// leaf(G): the maximum leaf count of a spanning tree, via
/// leaf(G) = n - (min connected dominating set) for n >= 3.
inline std::size_t exact_leaf(const AdjacencyGraph& g, const OracleBudget& budget = {}) {
  const std::size_t n = g.num_nodes();
  require_within(n, budget.max_cds_nodes, "exact_leaf");
  if (n <= 1) return 0;
  if (!is_connected(g)) throw DomainError("exact_leaf needs a connected graph");
  if (n == 2) return 2;
  return n - min_connected_dominating_set(g, budget);
}

/// Maximum leaf count by enumerating every spanning tree. Exponential; for
/// cross-checking exact_leaf on graphs with at most `max_nodes` nodes.
inline std::size_t max_leaf_by_enumeration(const AdjacencyGraph& g, std::size_t max_nodes = 9) {
  const std::size_t n = g.num_nodes();
  require_within(n, max_nodes, "spanning tree enumeration");
  if (n <= 1) return 0;
  if (!is_connected(g)) throw DomainError("spanning tree enumeration needs a connected graph");
  const auto edges = g.edges();
  std::vector<std::size_t> deg(n, 0);
  std::vector<NodeId> comp(n);
  std::size_t best = 0;
  std::size_t picked = 0;

  // Component labels are recomputed by relabeling, which keeps the
  // recursion free of union-find rollback.
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (picked == n - 1) {
      std::size_t leaves = 0;
      for (std::size_t d : deg) leaves += (d == 1);
      best = std::max(best, leaves);
      return;
    }
    if (edges.size() - i < (n - 1) - picked) return;
    const Edge e = edges[i];
    if (comp[e.u] != comp[e.v]) {
      const NodeId from = comp[e.v];
      const NodeId to = comp[e.u];
      std::vector<NodeId> moved;
      for (NodeId v = 0; v < n; ++v) {
        if (comp[v] == from) {
          comp[v] = to;
          moved.push_back(v);
        }
      }
      ++deg[e.u];
      ++deg[e.v];
      ++picked;
      rec(i + 1);
      --picked;
      --deg[e.u];
      --deg[e.v];
      for (NodeId v : moved) comp[v] = from;
    }
    rec(i + 1);
  };
  for (NodeId v = 0; v < n; ++v) comp[v] = v;
  rec(0);
  return best;
}

}  // namespace semistream::oracle
