#pragma once

#include <cstdint>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/oracle/budget.hpp"

namespace semistream::oracle {

/// Maximum |delta(S)| over node sets S with G[S] connected (the side that
/// must stay connected), by enumerating all subsets.
inline std::size_t connected_max_cut_exact(const AdjacencyGraph& g, const OracleBudget& budget = {}) {
  const std::size_t n = g.num_nodes();
  require_within(n, budget.max_cut_nodes, "connected_max_cut_exact");
  std::vector<std::uint32_t> nbr(n, 0);
  for (const Edge& e : g.edges()) {
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  const auto edges = g.edges();
  std::size_t best = 0;
  for (std::uint32_t S = 1; S < (1u << n); ++S) {
    std::uint32_t seen = S & (~S + 1);
    std::uint32_t grow = seen;
    while (grow != 0) {
      std::uint32_t next = 0;
      for (std::uint32_t b = grow; b != 0; b &= b - 1) next |= nbr[__builtin_ctz(b)];
      grow = next & S & ~seen;
      seen |= grow;
    }
    if (seen != S) continue;
    std::size_t cut = 0;
    for (const Edge& e : edges) cut += ((S >> e.u) & 1u) != ((S >> e.v) & 1u);
    if (cut > best) best = cut;
  }
  return best;
}

/// Edges with exactly one endpoint in `side`.
inline std::size_t cut_size(const AdjacencyGraph& g, const std::vector<bool>& side) {
  std::size_t c = 0;
  for (const Edge& e : g.edges()) c += side[e.u] != side[e.v];
  return c;
}

}  // namespace semistream::oracle
