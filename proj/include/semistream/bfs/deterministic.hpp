#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "semistream/bfs/common.hpp"
#include "semistream/core/graph.hpp"

namespace semistream {

struct DeterministicBfsStats {
  std::size_t stored_edges = 0;
  std::size_t update_passes = 0;
};

/// Deterministic BFS for insertion-only streams with a pass parameter p.
///
/// The first pass keeps the first ceil(n/p) neighbours of every node. Every
/// pass (the first included) relaxes the streamed edges Bellman-Ford style
/// and then closes the labels under the stored subgraph with a BFS seeded
/// by the current labels. The run ends after a pass that changes nothing;
/// parents are collected during that final pass, since labels stayed fixed
/// throughout it. A disconnected graph keeps infinite labels and is
/// reported with DomainError.
inline BfsResult bfs_deterministic(const GraphStream& stream, Meter& meter, NodeId s, std::size_t p,
                                   DeterministicBfsStats* stats = nullptr) {
  if (stream.turnstile()) throw DomainError("bfs_deterministic needs an insertion-only stream");
  const std::size_t n = stream.num_nodes();
  if (s >= n) throw DomainError("source out of range");
  if (p == 0) throw DomainError("pass parameter must be positive");
  const std::size_t cap = (n + p - 1) / p;

  std::vector<std::vector<NodeId>> stored(n);
  std::size_t stored_edges = 0;
  std::vector<Dist> d(n, kInfDist);
  std::vector<NodeId> parent(n, kNoNode);
  d[s] = 0;
  auto acct = meter.track("bfs.det", [&] { return 2 * stored_edges + 2 * n; });

  auto close_in_memory = [&]() {
    // Unit weights: process nodes in label order with a bucket queue.
    std::vector<std::vector<NodeId>> buckets;
    for (NodeId v = 0; v < n; ++v) {
      if (d[v] == kInfDist) continue;
      if (buckets.size() <= d[v]) buckets.resize(d[v] + 1);
      buckets[d[v]].push_back(v);
    }
    bool changed = false;
    for (std::size_t level = 0; level < buckets.size(); ++level) {
      for (std::size_t i = 0; i < buckets[level].size(); ++i) {
        const NodeId x = buckets[level][i];
        if (d[x] != level) continue;
        for (NodeId y : stored[x]) {
          if (d[y] > level + 1) {
            d[y] = static_cast<Dist>(level + 1);
            changed = true;
            if (buckets.size() <= level + 1) buckets.resize(level + 2);
            buckets[level + 1].push_back(y);
          }
        }
      }
    }
    return changed;
  };

  for (std::size_t pass = 0;; ++pass) {
    bool changed = false;
    std::fill(parent.begin(), parent.end(), kNoNode);
    auto offer = [&](NodeId a, NodeId b) {
      if (d[a] != kInfDist && d[a] + 1 < d[b]) {
        d[b] = d[a] + 1;
        changed = true;
      }
      if (d[a] != kInfDist && d[a] + 1 == d[b] && (parent[b] == kNoNode || a < parent[b])) parent[b] = a;
    };
    stream_pass(stream, meter, [&](const EdgeUpdate& up) {
      if (pass == 0) {
        if (stored[up.u].size() < cap || stored[up.v].size() < cap) {
          stored[up.u].push_back(up.v);
          stored[up.v].push_back(up.u);
          ++stored_edges;
        }
      }
      offer(up.u, up.v);
      offer(up.v, up.u);
    });
    changed = close_in_memory() || changed;
    if (!changed) {
      if (stats) {
        stats->stored_edges = stored_edges;
        stats->update_passes = pass;
      }
      break;
    }
  }
  BfsResult res;
  res.source = s;
  res.dist = d;
  for (NodeId v = 0; v < n; ++v) {
    if (d[v] == kInfDist) throw DomainError("graph is not connected; node " + std::to_string(v) + " unreached");
  }
  res.tree = RootedTree::from_parents(s, parent);
  return res;
}

}  // namespace semistream
