#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "semistream/core/rng.hpp"
#include "semistream/core/tree.hpp"
#include "semistream/core/types.hpp"
#include "semistream/harness/meter.hpp"
#include "semistream/sketch/l0_sampler.hpp"

namespace semistream {

struct BfsResult {
  NodeId source = kNoNode;
  std::vector<Dist> dist;
  RootedTree tree;
};

namespace detail {

inline Dist plus_one(Dist d) { return d == kInfDist ? kInfDist : d + 1; }

// Lipschitz test for one edge under labels d: |d(a) - d(b)| <= 1, with
// infinity only next to infinity.
inline bool labels_consistent(const std::vector<Dist>& d, NodeId a, NodeId b) {
  const Dist x = d[a], y = d[b];
  if (x == kInfDist || y == kInfDist) return x == y;
  return (x > y ? x - y : y - x) <= 1;
}

}  // namespace detail

/// One pass that turns distance labels into BFS trees and checks them.
///
/// Labels are exact iff d(source) = 0, every other node has a neighbour
/// labelled d - 1, and no edge joins labels more than one apart. The
/// pass checks both, so wrong labels are reported instead of returned.
/// Insertion-only parents are the smallest-id neighbour one level up. In
/// turnstile streams an l0 sampler per node over that neighbour class
/// picks the parent, and the edge check counts violating updates with
/// their signs so deleted edges cancel out. Sampler failures are retried
/// with fresh seeds for the affected nodes only.
inline std::vector<RootedTree> parents_pass(const GraphStream& stream, Meter& meter,
                                            const std::vector<NodeId>& sources,
                                            const std::vector<std::vector<Dist>>& dist, std::uint64_t seed,
                                            unsigned attempts = 5) {
  const std::size_t n = stream.num_nodes();
  const std::size_t c = sources.size();
  for (std::size_t i = 0; i < c; ++i) {
    if (dist[i][sources[i]] != 0) throw RetryableFailure("source label is not zero");
    for (NodeId v = 0; v < n; ++v) {
      if (dist[i][v] == kInfDist) throw RetryableFailure("unreached node; graph disconnected or labels incomplete");
    }
  }
  std::vector<std::vector<NodeId>> parent(c, std::vector<NodeId>(n, kNoNode));
  auto acct = meter.track("bfs.parents", [&] { return c * n; });

  if (!stream.turnstile()) {
    bool bad = false;
    stream_pass(stream, meter, [&](const EdgeUpdate& up) {
      for (std::size_t i = 0; i < c; ++i) {
        const auto& d = dist[i];
        if (!detail::labels_consistent(d, up.u, up.v)) bad = true;
        if (d[up.u] + 1 == d[up.v] && (parent[i][up.v] == kNoNode || up.u < parent[i][up.v])) parent[i][up.v] = up.u;
        if (d[up.v] + 1 == d[up.u] && (parent[i][up.u] == kNoNode || up.v < parent[i][up.u])) parent[i][up.u] = up.v;
      }
    });
    if (bad) throw RetryableFailure("distance labels violate an edge");
  } else {
    std::vector<std::vector<bool>> todo(c, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < c; ++i) {
      for (NodeId v = 0; v < n; ++v) todo[i][v] = v != sources[i];
    }
    std::vector<std::int64_t> violations(c, 0);
    for (unsigned attempt = 0;; ++attempt) {
      L0Params prm;
      prm.levels = L0Params::levels_for(n);
      const auto hashes = std::make_shared<const L0Hashes>(n, derive_seed(seed, "bfs.parents", attempt), prm);
      std::vector<std::vector<L0Sketch>> sk(c, std::vector<L0Sketch>(n));
      std::size_t live = 0;
      for (std::size_t i = 0; i < c; ++i) {
        for (NodeId v = 0; v < n; ++v) {
          if (todo[i][v]) {
            sk[i][v] = L0Sketch(hashes);
            ++live;
          }
        }
      }
      auto sk_acct = meter.track("bfs.parents.samplers", [&] { return live * L0Sketch(hashes).words(); });
      const bool first = attempt == 0;
      stream_pass(stream, meter, [&](const EdgeUpdate& up) {
        for (std::size_t i = 0; i < c; ++i) {
          const auto& d = dist[i];
          if (first && !detail::labels_consistent(d, up.u, up.v)) violations[i] += up.sign;
          if (d[up.u] + 1 == d[up.v] && todo[i][up.v]) sk[i][up.v].update(up.u, up.sign);
          if (d[up.v] + 1 == d[up.u] && todo[i][up.u]) sk[i][up.u].update(up.v, up.sign);
        }
      });
      for (std::size_t i = 0; i < c; ++i) {
        if (violations[i] != 0) throw RetryableFailure("distance labels violate an edge");
      }
      bool pending = false;
      for (std::size_t i = 0; i < c; ++i) {
        for (NodeId v = 0; v < n; ++v) {
          if (!todo[i][v]) continue;
          const auto r = sk[i][v].query();
          if (r.status == L0Status::Empty) throw RetryableFailure("node has no neighbour one level up");
          if (r.found() && r.index < n) {
            parent[i][v] = static_cast<NodeId>(r.index);
            todo[i][v] = false;
          } else {
            pending = true;
          }
        }
      }
      if (!pending) break;
      if (attempt + 1 >= attempts) throw RetryableFailure("parent samplers kept failing");
    }
  }

  std::vector<RootedTree> out;
  out.reserve(c);
  for (std::size_t i = 0; i < c; ++i) {
    for (NodeId v = 0; v < n; ++v) {
      if (v != sources[i] && parent[i][v] == kNoNode) throw RetryableFailure("node has no neighbour one level up");
    }
    out.push_back(RootedTree::from_parents(sources[i], parent[i]));
  }
  return out;
}

/// Runs `f(attempt_seed)` until it stops throwing RetryableFailure, at
/// most `attempts` times; the last failure propagates.
template <typename F>
auto with_retries(std::uint64_t seed, unsigned attempts, F&& f) -> decltype(f(seed)) {
  for (unsigned a = 0;; ++a) {
    try {
      return f(derive_seed(seed, "retry", a));
    } catch (const RetryableFailure&) {
      if (a + 1 >= attempts) throw;
    }
  }
}

}  // namespace semistream
