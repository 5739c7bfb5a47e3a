#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "semistream/cert/certificate.hpp"
#include "semistream/core/union_find.hpp"
#include "semistream/harness/pass_mux.hpp"
#include "semistream/sketch/forest_sketch.hpp"
#include "semistream/sketch/l0_sampler.hpp"

// Streaming building blocks for the DFS algorithms. All of them work on one
// lane of a PassMux and speak lane-local node ids.

namespace semistream::detail {

inline constexpr std::uint32_t kNoUnit = static_cast<std::uint32_t>(-1);

/// Spanning forest of the subgraph induced by `mask`, one pass.
inline Task<std::vector<Edge>> co_spanning_forest(PassMux::Lane lane, std::vector<bool> mask, std::uint64_t seed) {
  const std::size_t m = lane.size();
  Meter& meter = lane.mux().meter();
  if (!lane.turnstile()) {
    UnionFind uf(m);
    std::vector<Edge> forest;
    auto acct = meter.track("forest", [&] { return m + 2 * forest.size(); });
    PassMux::Handler h = [&](NodeId a, NodeId b, int) {
      if (mask[a] && mask[b] && uf.unite(a, b)) forest.emplace_back(a, b);
    };
    co_await lane.pass(std::move(h));
    std::sort(forest.begin(), forest.end());
    co_return forest;
  }
  ForestSketch fs(m, seed, {}, mask);
  auto acct = meter.track("forest.sketch", [&] { return fs.words(); });
  PassMux::Handler h = [&](NodeId a, NodeId b, int sign) { fs.update(a, b, sign); };
  co_await lane.pass(std::move(h));
  co_return fs.decode_or_throw();
}

/// Component label per masked node from a forest (kNoUnit elsewhere);
/// components are numbered by their smallest node.
inline std::vector<std::uint32_t> forest_units(std::size_t m, const std::vector<bool>& mask,
                                               const std::vector<Edge>& forest, std::uint32_t& count) {
  UnionFind uf(m);
  for (const Edge& e : forest) uf.unite(e.u, e.v);
  std::vector<std::uint32_t> unit(m, kNoUnit), of_root(m, kNoUnit);
  count = 0;
  for (NodeId v = 0; v < m; ++v) {
    if (!mask[v]) continue;
    const NodeId r = uf.find(v);
    if (of_root[r] == kNoUnit) of_root[r] = count++;
    unit[v] = of_root[r];
  }
  return unit;
}

/// Strong s-VC certificate of the subgraph induced by `mask`, one pass.
inline Task<std::vector<Edge>> co_certificate(PassMux::Lane lane, std::vector<bool> mask, unsigned s,
                                              std::uint64_t seed) {
  const std::size_t m = lane.size();
  Meter& meter = lane.mux().meter();
  if (!lane.turnstile()) {
    InsertionCertificateBuilder b(m, s);
    auto acct = meter.track("certificate", [&] { return b.words(); });
    PassMux::Handler h = [&](NodeId a, NodeId x, int) {
      if (mask[a] && mask[x]) b.add(Edge(a, x));
    };
    co_await lane.pass(std::move(h));
    co_return b.finish().edges;
  }
  TurnstileCertificateBuilder b(m, s, seed);
  auto acct = meter.track("certificate.sketch", [&] { return b.words(); });
  PassMux::Handler h = [&](NodeId a, NodeId x, int sign) {
    if (mask[a] && mask[x]) b.add(a, x, sign);
  };
  co_await lane.pass(std::move(h));
  co_return b.finish().edges;
}

/// How a unit (a set of non-tree nodes) hangs off a partial tree.
struct Attachment {
  Dist depth = kInfDist;      // depth of the deepest adjacent tree node
  NodeId anchor = kNoNode;    // that tree node
  NodeId entry = kNoNode;     // a unit node adjacent to it
  NodeId target = kNoNode;    // some adjacent node with target[] set
  NodeId target_entry = kNoNode;
};

namespace lane_ops_impl {

inline bool better_witness(NodeId a, NodeId b, NodeId cur_a, NodeId cur_b) {
  return cur_a == kNoNode || std::pair(a, b) < std::pair(cur_a, cur_b);
}

}  // namespace lane_ops_impl

/// For every unit: the deepest adjacent tree node (tree nodes are the ones
/// with a finite depth) with an edge reaching it, and optionally an edge
/// to a target node.
///
/// Insertion-only: one pass; ties go to the smallest witness pair, so the
/// result does not depend on the stream order. Turnstile: one pass of
/// signed counters for adjacency, a parallel binary search over the depth
/// with signed counters (ceil(log2 depth) passes, exact), then one pass of
/// l0 samplers per unit to recover witness edges, repeated for units
/// whose sampler failed.
inline Task<std::vector<Attachment>> co_attachments(PassMux::Lane lane, std::vector<std::uint32_t> unit_of,
                                                    std::uint32_t units, std::vector<Dist> depth,
                                                    std::vector<bool> target, std::uint64_t seed,
                                                    unsigned attempts = 5) {
  const std::size_t m = lane.size();
  Meter& meter = lane.mux().meter();
  std::vector<Attachment> out(units);
  auto acct = meter.track("attach", [&] { return 5 * std::size_t{units}; });
  const bool want_target = !target.empty();
  auto is_target = [&](NodeId x) { return want_target && target[x]; };

  if (!lane.turnstile()) {
    PassMux::Handler h = [&](NodeId a, NodeId b, int) {
      for (int side = 0; side < 2; ++side) {
        const NodeId x = side == 0 ? a : b;
        const NodeId y = side == 0 ? b : a;
        const auto u = unit_of[x];
        if (u == kNoUnit) continue;
        Attachment& at = out[u];
        if (depth[y] != kInfDist) {
          if (at.depth == kInfDist || depth[y] > at.depth ||
              (depth[y] == at.depth && lane_ops_impl::better_witness(y, x, at.anchor, at.entry))) {
            at.depth = depth[y];
            at.anchor = y;
            at.entry = x;
          }
        }
        if (is_target(y) && lane_ops_impl::better_witness(y, x, at.target, at.target_entry)) {
          at.target = y;
          at.target_entry = x;
        }
      }
    };
    co_await lane.pass(std::move(h));
    co_return out;
  }

  Dist max_depth = 0;
  for (Dist d : depth) {
    if (d != kInfDist) max_depth = std::max(max_depth, d);
  }
  // lo[u] is a depth with an edge at depth >= lo; hi bounds the answer.
  std::vector<std::int64_t> count(units, 0), tcount(units, 0);
  std::vector<Dist> lo(units, 0), hi(units, max_depth), probe(units, 0);
  auto count_acct = meter.track("attach.counters", [&] { return 5 * std::size_t{units}; });
  {
    PassMux::Handler h = [&](NodeId a, NodeId b, int sign) {
      for (int side = 0; side < 2; ++side) {
        const NodeId x = side == 0 ? a : b;
        const NodeId y = side == 0 ? b : a;
        const auto u = unit_of[x];
        if (u == kNoUnit) continue;
        if (depth[y] != kInfDist) count[u] += sign;
        if (is_target(y)) tcount[u] += sign;
      }
    };
    co_await lane.pass(std::move(h));
  }
  std::vector<bool> adjacent(units);
  for (std::uint32_t u = 0; u < units; ++u) adjacent[u] = count[u] > 0;
  for (;;) {
    bool any = false;
    for (std::uint32_t u = 0; u < units; ++u) {
      if (adjacent[u] && lo[u] < hi[u]) {
        probe[u] = lo[u] + (hi[u] - lo[u] + 1) / 2;
        any = true;
      } else {
        probe[u] = kInfDist;
      }
    }
    if (!any) break;
    std::fill(count.begin(), count.end(), 0);
    PassMux::Handler h = [&](NodeId a, NodeId b, int sign) {
      for (int side = 0; side < 2; ++side) {
        const NodeId x = side == 0 ? a : b;
        const NodeId y = side == 0 ? b : a;
        const auto u = unit_of[x];
        if (u == kNoUnit || probe[u] == kInfDist || depth[y] == kInfDist) continue;
        if (depth[y] >= probe[u]) count[u] += sign;
      }
    };
    co_await lane.pass(std::move(h));
    for (std::uint32_t u = 0; u < units; ++u) {
      if (probe[u] == kInfDist) continue;
      if (count[u] > 0) {
        lo[u] = probe[u];
      } else {
        hi[u] = probe[u] - 1;
      }
    }
  }

  // Witness edges. Edge (x in unit, y outside) is item x * m + y.
  std::vector<bool> need_t(units), need_q(units);
  for (std::uint32_t u = 0; u < units; ++u) {
    need_t[u] = adjacent[u];
    need_q[u] = tcount[u] > 0;
    if (adjacent[u]) out[u].depth = lo[u];
  }
  L0Params prm;
  prm.levels = L0Params::levels_for(std::max<std::uint64_t>(1, std::uint64_t{m} * m));
  for (unsigned attempt = 0;; ++attempt) {
    bool pending = false;
    for (std::uint32_t u = 0; u < units; ++u) pending = pending || need_t[u] || need_q[u];
    if (!pending) break;
    if (attempt >= attempts) throw RetryableFailure("attachment samplers kept failing");
    const auto hashes = std::make_shared<const L0Hashes>(std::max<std::uint64_t>(1, std::uint64_t{m} * m),
                                                         derive_seed(seed, "attach.witness", attempt), prm);
    std::vector<L0Sketch> ts(units), qs(units);
    std::size_t live = 0;
    for (std::uint32_t u = 0; u < units; ++u) {
      if (need_t[u]) ts[u] = L0Sketch(hashes), ++live;
      if (need_q[u]) qs[u] = L0Sketch(hashes), ++live;
    }
    const std::size_t per = L0Sketch(hashes).words();
    auto sk_acct = meter.track("attach.samplers", [&] { return live * per; });
    PassMux::Handler h = [&](NodeId a, NodeId b, int sign) {
      for (int side = 0; side < 2; ++side) {
        const NodeId x = side == 0 ? a : b;
        const NodeId y = side == 0 ? b : a;
        const auto u = unit_of[x];
        if (u == kNoUnit) continue;
        const std::uint64_t item = std::uint64_t{x} * m + y;
        if (need_t[u] && depth[y] == out[u].depth) ts[u].update(item, sign);
        if (need_q[u] && is_target(y)) qs[u].update(item, sign);
      }
    };
    co_await lane.pass(std::move(h));
    for (std::uint32_t u = 0; u < units; ++u) {
      if (need_t[u]) {
        const auto r = ts[u].query();
        if (r.found() && r.index < std::uint64_t{m} * m) {
          out[u].entry = static_cast<NodeId>(r.index / m);
          out[u].anchor = static_cast<NodeId>(r.index % m);
          need_t[u] = false;
        }
      }
      if (need_q[u]) {
        const auto r = qs[u].query();
        if (r.found() && r.index < std::uint64_t{m} * m) {
          out[u].target_entry = static_cast<NodeId>(r.index / m);
          out[u].target = static_cast<NodeId>(r.index % m);
          need_q[u] = false;
        }
      }
    }
  }
  co_return out;
}

}  // namespace semistream::detail
