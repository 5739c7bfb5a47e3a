#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "semistream/core/rng.hpp"
#include "semistream/mlst/approx.hpp"

namespace semistream {

struct CutResult {
  std::vector<NodeId> left;   // subset of the witness tree's leaves
  std::vector<NodeId> right;  // induces a connected subgraph
  std::size_t cut_value = 0;
  RootedTree witness;
};

/// Connected cut on a regular graph: a leafy spanning tree T from the
/// sparsifier pipeline, then every leaf of T joins L with probability 1/2.
/// The rest of T stays connected because only leaves are removed.
///
/// The cut value is read off the sparsifier when it holds all of G (degree
/// at most k); otherwise one more pass counts the crossing edges.
inline CutResult connected_max_cut(const GraphStream& stream, Meter& meter, double epsilon, std::uint64_t seed,
                                   const SparsifierOptions& sopt_in = {}) {
  const std::size_t n = stream.num_nodes();
  SparsifierOptions sopt = sopt_in;
  sopt.seed = derive_seed(seed, "maxcut.sparsifier");
  const auto sp = build_sparsifier(stream, meter, epsilon, sopt);
  for (std::size_t d : sp.degrees) {
    if (d != sp.degrees[0]) throw DomainError("connected_max_cut needs a regular graph");
  }
  const auto h = AdjacencyGraph::from_edges(n, sp.edges);
  CutResult res;
  res.witness = expansion_mlst(h);

  std::vector<bool> in_left(n, false);
  auto rng = make_rng(seed, "maxcut.leaves");
  for (NodeId v : res.witness.leaves()) in_left[v] = bernoulli(rng, 0.5);
  // Taking every node (n = 2 with both leaves drawn) would leave the
  // other side empty.
  if (n >= 1 && std::all_of(in_left.begin(), in_left.end(), [](bool b) { return b; })) in_left[n - 1] = false;
  for (NodeId v = 0; v < n; ++v) (in_left[v] ? res.left : res.right).push_back(v);

  if (sp.degrees.empty() || sp.degrees[0] <= sp.k) {
    for (const Edge& e : sp.edges) res.cut_value += in_left[e.u] != in_left[e.v];
  } else {
    std::int64_t crossing = 0;
    stream_pass(stream, meter, [&](const EdgeUpdate& up) {
      if (in_left[up.u] != in_left[up.v]) crossing += up.sign;
    });
    res.cut_value = static_cast<std::size_t>(crossing);
  }
  return res;
}

}  // namespace semistream
