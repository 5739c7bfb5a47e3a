#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/oracle/budget.hpp"
#include "semistream/oracle/distances.hpp"

namespace semistream::oracle {

/// Minimum number of edges of a tree spanning `terminals` (Dreyfus-Wagner).
inline std::size_t steiner_opt(const AdjacencyGraph& g, std::vector<NodeId> terminals,
                               const OracleBudget& budget = {}) {
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  const std::size_t k = terminals.size();
  require_within(k, budget.max_steiner_terminals, "steiner_opt");
  if (k <= 1) return 0;
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<Dist>> dist(n);
  for (NodeId v = 0; v < n; ++v) dist[v] = bfs_distances(g, v);
  if (dist[terminals[0]][terminals[1]] == kInfDist) throw DomainError("terminals are disconnected");

  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max() / 4;
  const std::size_t full = (std::size_t{1} << k) - 1;
  // dp[S][v]: cheapest tree connecting terminal subset S together with v.
  std::vector<std::vector<std::uint64_t>> dp(full + 1, std::vector<std::uint64_t>(n, kInf));
  for (std::size_t i = 0; i < k; ++i) {
    for (NodeId v = 0; v < n; ++v) {
      const Dist d = dist[terminals[i]][v];
      dp[std::size_t{1} << i][v] = d == kInfDist ? kInf : d;
    }
  }
  for (std::size_t S = 1; S <= full; ++S) {
    if ((S & (S - 1)) == 0) continue;
    auto& row = dp[S];
    for (NodeId v = 0; v < n; ++v) {
      for (std::size_t A = (S - 1) & S; A > 0; A = (A - 1) & S) {
        if (A < (S ^ A)) continue;  // each split once
        row[v] = std::min(row[v], dp[A][v] + dp[S ^ A][v]);
      }
    }
    // Relax through shortest paths: dp[S][v] = min_u dp[S][u] + d(u, v).
    std::vector<std::uint64_t> relaxed = row;
    for (NodeId v = 0; v < n; ++v) {
      for (NodeId u = 0; u < n; ++u) {
        if (row[u] >= kInf || dist[u][v] == kInfDist) continue;
        relaxed[v] = std::min(relaxed[v], row[u] + dist[u][v]);
      }
    }
    row = std::move(relaxed);
  }
  std::uint64_t best = kInf;
  for (NodeId v = 0; v < n; ++v) best = std::min(best, dp[full][v]);
  return static_cast<std::size_t>(best);
}

/// Steiner optimum by enumerating node supersets of the terminals: the
/// answer is min |X| - 1 over connected induced G[X] with X containing the
/// terminals. Exponential in n.
inline std::size_t steiner_opt_by_enumeration(const AdjacencyGraph& g, const std::vector<NodeId>& terminals,
                                              std::size_t max_nodes = 16) {
  const std::size_t n = g.num_nodes();
  require_within(n, max_nodes, "steiner enumeration");
  std::uint32_t must = 0;
  for (NodeId t : terminals) must |= 1u << t;
  std::size_t best = n;
  for (std::uint32_t X = 0; X < (1u << n); ++X) {
    if ((X & must) != must || X == 0) continue;
    const auto size = static_cast<std::size_t>(__builtin_popcount(X));
    if (size - 1 >= best) continue;
    const int start = __builtin_ctz(X);
    std::uint32_t seen = 1u << start;
    std::vector<NodeId> stack{static_cast<NodeId>(start)};
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : g.neighbors(x)) {
        if ((X >> y & 1u) && !(seen >> y & 1u)) {
          seen |= 1u << y;
          stack.push_back(y);
        }
      }
    }
    if (seen == X) best = size - 1;
  }
  return best;
}

}  // namespace semistream::oracle
