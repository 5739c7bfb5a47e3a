#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "semistream/bfs/randomized.hpp"

namespace semistream {

struct SteinerResult {
  std::vector<NodeId> terminals;
  std::vector<Edge> edges;  // sorted; a tree spanning the terminals
  std::size_t cost() const { return edges.size(); }
};

/// Steiner tree within twice the optimum: BFS from every terminal, MST of
/// the terminal distance graph, each MST edge replaced by the tree path
/// from the BFS of one endpoint, then a spanning tree of the union with
/// non-terminal leaves pruned away.
inline SteinerResult steiner_2approx(const GraphStream& stream, Meter& meter, const std::vector<NodeId>& S,
                                     std::size_t k, const RandomizedBfsOptions& opt = {}) {
  const std::size_t n = stream.num_nodes();
  std::vector<NodeId> terms = S;
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  SteinerResult res;
  res.terminals = terms;
  if (terms.size() <= 1) {
    for (NodeId t : terms) {
      if (t >= n) throw DomainError("terminal out of range");
    }
    return res;
  }
  const auto bfs = multi_bfs(stream, meter, terms, k, opt);
  const std::size_t c = terms.size();

  // Prim on the metric closure; c is small, so the dense version is fine.
  std::vector<bool> in(c, false);
  std::vector<Dist> key(c, kInfDist);
  std::vector<std::size_t> via(c, c);
  key[0] = 0;
  std::vector<bool> used(n, false);
  std::vector<Edge> pieces;
  for (std::size_t round = 0; round < c; ++round) {
    std::size_t x = c;
    for (std::size_t i = 0; i < c; ++i) {
      if (!in[i] && (x == c || key[i] < key[x])) x = i;
    }
    in[x] = true;
    if (via[x] != c) {
      // Walk from terms[x] up the BFS tree rooted at terms[via[x]].
      const RootedTree& t = bfs[via[x]].tree;
      for (NodeId v = terms[x]; v != terms[via[x]]; v = t.parent(v)) pieces.emplace_back(v, t.parent(v));
    }
    for (std::size_t i = 0; i < c; ++i) {
      const Dist d = bfs[x].dist[terms[i]];
      if (!in[i] && d < key[i]) {
        key[i] = d;
        via[i] = x;
      }
    }
  }
  normalize_edges(pieces);

  // Spanning forest of the union by BFS from the first terminal.
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : pieces) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<NodeId> parent(n, kNoNode);
  std::vector<bool> seen(n, false);
  std::deque<NodeId> q{terms[0]};
  seen[terms[0]] = true;
  std::vector<std::vector<NodeId>> kids(n);
  while (!q.empty()) {
    const NodeId x = q.front();
    q.pop_front();
    for (NodeId y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = x;
        kids[x].push_back(y);
        q.push_back(y);
      }
    }
  }
  std::vector<bool> terminal(n, false);
  for (NodeId t : terms) terminal[t] = true;
  std::vector<std::size_t> live_kids(n, 0);
  for (NodeId v = 0; v < n; ++v) live_kids[v] = kids[v].size();
  std::vector<bool> kept = seen;
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < n; ++v) {
    if (seen[v] && live_kids[v] == 0 && !terminal[v]) stack.push_back(v);
  }
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    kept[v] = false;
    const NodeId p = parent[v];
    if (p != kNoNode && --live_kids[p] == 0 && !terminal[p]) stack.push_back(p);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (kept[v] && parent[v] != kNoNode) res.edges.emplace_back(v, parent[v]);
  }
  normalize_edges(res.edges);
  return res;
}

}  // namespace semistream
