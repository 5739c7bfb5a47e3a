#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <vector>

#include "semistream/core/graph.hpp"

namespace semistream::oracle {

/// Edmonds-Karp on a small residual graph; capacities are integers.
class SmallMaxFlow {
 public:
  explicit SmallMaxFlow(std::size_t nodes) : head_(nodes) {}

  void add_arc(std::size_t from, std::size_t to, int cap) {
    head_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap});
    head_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0});
  }

  int run(std::size_t s, std::size_t t, int limit = std::numeric_limits<int>::max()) {
    int flow = 0;
    while (flow < limit) {
      std::vector<std::size_t> via(head_.size(), kNone);
      std::deque<std::size_t> q{s};
      std::vector<bool> seen(head_.size(), false);
      seen[s] = true;
      while (!q.empty() && !seen[t]) {
        const std::size_t x = q.front();
        q.pop_front();
        for (std::size_t a : head_[x]) {
          if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
            seen[arcs_[a].to] = true;
            via[arcs_[a].to] = a;
            q.push_back(arcs_[a].to);
          }
        }
      }
      if (!seen[t]) break;
      int push = limit - flow;
      for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) push = std::min(push, arcs_[via[v]].cap);
      for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= push;
        arcs_[via[v] ^ 1].cap += push;
      }
      flow += push;
    }
    return flow;
  }

 private:
  struct Arc {
    std::size_t to;
    int cap;
  };
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> head_;
  std::vector<Arc> arcs_;
};

/// Maximum number of internally node-disjoint u-v paths (a direct edge
/// counts as one path). Node v is split into v_in = 2v, v_out = 2v+1.
inline int node_connectivity(const AdjacencyGraph& g, NodeId u, NodeId v) {
  const std::size_t n = g.num_nodes();
  constexpr int kBig = 1 << 28;
  SmallMaxFlow f(2 * n);
  for (NodeId x = 0; x < n; ++x) f.add_arc(2 * x, 2 * x + 1, (x == u || x == v) ? kBig : 1);
  for (const Edge& e : g.edges()) {
    f.add_arc(2 * e.u + 1, 2 * e.v, 1);
    f.add_arc(2 * e.v + 1, 2 * e.u, 1);
  }
  return f.run(2 * u + 1, 2 * v);
}

/// Maximum number of edge-disjoint u-v paths.
inline int edge_connectivity(const AdjacencyGraph& g, NodeId u, NodeId v) {
  SmallMaxFlow f(g.num_nodes());
  for (const Edge& e : g.edges()) {
    f.add_arc(e.u, e.v, 1);
    f.add_arc(e.v, e.u, 1);
  }
  return f.run(u, v);
}

}  // namespace semistream::oracle
