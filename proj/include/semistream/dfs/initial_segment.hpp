#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "semistream/dfs/reduce.hpp"

namespace semistream {

/// A component of G - T with its portal: anchor is the deepest segment
/// node adjacent to it, entry a component node adjacent to the anchor.
struct SegmentComponent {
  std::vector<NodeId> nodes;  // sorted
  NodeId anchor = kNoNode;
  NodeId entry = kNoNode;
};

struct InitialSegment {
  NodeId root = kNoNode;
  std::vector<NodeId> parent;  // kNoNode off the segment and at the root
  std::vector<Dist> depth;     // kInfDist off the segment
  std::vector<SegmentComponent> components;
  PathSystem separator;        // as built, before the segment consumed it
  std::size_t iterations = 0;

  [[nodiscard]] bool contains(NodeId v) const { return depth[v] != kInfDist; }
};

struct SegmentStats {
  SeparatorStats separator;
  std::size_t iterations = 0;
};

namespace detail {

/// Path between x and y inside one tree of a forest given as edges.
inline Path forest_path(std::size_t m, const std::vector<Edge>& forest, NodeId x, NodeId y) {
  std::vector<std::vector<NodeId>> adj(m);
  for (const Edge& e : forest) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<NodeId> via(m, kNoNode);
  std::deque<NodeId> q{x};
  via[x] = x;
  while (!q.empty() && via[y] == kNoNode) {
    const NodeId a = q.front();
    q.pop_front();
    for (NodeId b : adj[a]) {
      if (via[b] == kNoNode) {
        via[b] = a;
        q.push_back(b);
      }
    }
  }
  if (via[y] == kNoNode) throw std::logic_error("forest path endpoints in different trees");
  Path p;
  for (NodeId v = y; v != x; v = via[v]) p.push_back(v);
  p.push_back(x);
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace detail

/// Initial segment rooted at `root` on a connected lane. Builds a
/// separator, then repeatedly attaches to the deepest possible segment
/// node v a path p = (v, ..., u) whose inner nodes are off the segment and
/// the separator, with u on a separator path; the segment also takes the
/// longer of u's two sides on that path. Finally every component of
/// G - T gets its portal.
inline Task<InitialSegment> co_initial_segment(PassMux::Lane lane, NodeId root, std::size_t k, std::size_t s,
                                               std::uint64_t seed, SegmentStats* stats = nullptr) {
  const std::size_t m = lane.size();
  if (root >= m) throw DomainError("root out of range");
  SegmentStats local;
  SegmentStats& st = stats != nullptr ? *stats : local;
  Meter& meter = lane.mux().meter();

  InitialSegment seg;
  seg.root = root;
  seg.parent.assign(m, kNoNode);
  seg.depth.assign(m, kInfDist);
  auto acct = meter.track("segment", [&] { return 2 * m; });
  PathSystem Q = co_await co_separator(lane, k, s, derive_seed(seed, "segment.separator", 0), &st.separator);
  seg.separator = Q;

  std::vector<NodeId> on_q = Q.owner(m);
  // Removes u from its separator path. With take_longer the longer side,
  // running away from u, is returned and the other side stays in Q;
  // otherwise both sides stay.
  auto cut_out = [&](NodeId u, bool take_longer) {
    const NodeId idx = on_q[u];
    const Path p = std::move(Q.paths[idx]);
    const auto at = static_cast<std::size_t>(std::find(p.begin(), p.end(), u) - p.begin());
    Path before(p.rbegin() + static_cast<std::ptrdiff_t>(p.size() - at), p.rend());
    Path after(p.begin() + static_cast<std::ptrdiff_t>(at) + 1, p.end());
    Path take;
    if (take_longer) {
      if (after.size() >= before.size()) {
        take = std::move(after);
        Q.paths[idx] = std::move(before);
      } else {
        take = std::move(before);
        Q.paths[idx] = std::move(after);
      }
    } else {
      Q.paths[idx] = std::move(before);
      Q.paths.push_back(std::move(after));
    }
    std::erase_if(Q.paths, [](const Path& x) { return x.empty(); });
    on_q = Q.owner(m);
    return take;
  };
  auto append = [&](NodeId at, const Path& chain) {
    NodeId prev = at;
    for (NodeId v : chain) {
      seg.parent[v] = prev;
      seg.depth[v] = seg.depth[prev] + 1;
      prev = v;
    }
  };

  seg.depth[root] = 0;
  if (on_q[root] != kNoNode) cut_out(root, false);

  while (!Q.empty()) {
    ++st.iterations;
    ++seg.iterations;
    std::vector<bool> free_mask(m);
    std::vector<bool> target(m);
    for (NodeId v = 0; v < m; ++v) {
      free_mask[v] = !seg.contains(v) && on_q[v] == kNoNode;
      target[v] = on_q[v] != kNoNode;
    }
    const auto forest =
        co_await detail::co_spanning_forest(lane, free_mask, derive_seed(seed, "segment.forest", seg.iterations));
    std::uint32_t comps = 0;
    auto unit = detail::forest_units(m, free_mask, forest, comps);
    std::uint32_t units = comps;
    for (NodeId v = 0; v < m; ++v) {
      if (target[v]) unit[v] = units++;
    }
    const auto att = co_await detail::co_attachments(lane, unit, units, seg.depth, target,
                                                     derive_seed(seed, "segment.attach", seg.iterations));
    std::uint32_t best = detail::kNoUnit;
    for (std::uint32_t u = 0; u < units; ++u) {
      const auto& a = att[u];
      if (a.anchor == kNoNode || (u < comps && a.target == kNoNode)) continue;
      if (best == detail::kNoUnit || a.depth > att[best].depth) best = u;
    }
    if (best == detail::kNoUnit) throw DomainError("graph is not connected");
    const auto& a = att[best];
    Path p;
    NodeId u;
    if (best < comps) {
      p = detail::forest_path(m, forest, a.entry, a.target_entry);
      u = a.target;
    } else {
      u = a.entry;
    }
    p.push_back(u);
    append(a.anchor, p);
    append(u, cut_out(u, true));
  }

  // Portals.
  std::vector<bool> rest(m);
  for (NodeId v = 0; v < m; ++v) rest[v] = !seg.contains(v);
  const auto forest = co_await detail::co_spanning_forest(lane, rest, derive_seed(seed, "segment.portals", 0));
  std::uint32_t comps = 0;
  const auto unit = detail::forest_units(m, rest, forest, comps);
  const auto att = co_await detail::co_attachments(lane, unit, comps, seg.depth, {},
                                                   derive_seed(seed, "segment.portals", 1));
  seg.components.resize(comps);
  for (NodeId v = 0; v < m; ++v) {
    if (unit[v] != detail::kNoUnit) seg.components[unit[v]].nodes.push_back(v);
  }
  for (std::uint32_t c = 0; c < comps; ++c) {
    if (att[c].anchor == kNoNode) throw DomainError("graph is not connected");
    seg.components[c].anchor = att[c].anchor;
    seg.components[c].entry = att[c].entry;
  }
  co_return seg;
}

inline InitialSegment initial_segment(const GraphStream& stream, Meter& meter, NodeId root, std::size_t k,
                                      std::size_t s, std::uint64_t seed = 0, SegmentStats* stats = nullptr) {
  return run_on_stream<InitialSegment>(stream, meter, [&](PassMux::Lane lane) {
    return co_initial_segment(lane, root, k, s, seed, stats);
  });
}

}  // namespace semistream
