#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "semistream/core/tree.hpp"
#include "semistream/dfs/initial_segment.hpp"

namespace semistream {

struct DfsAaOptions {
  std::uint64_t seed = 0;
  unsigned attempts = 5;  // per subproblem, for turnstile sketch failures
};

struct DfsAaStats {
  std::size_t subproblems = 0;
  std::size_t max_level = 0;
  std::size_t retries = 0;
  std::size_t max_separator = 0;       // largest separator after Reduce
  std::size_t max_stage1_iterations = 0;
  std::size_t reduce_calls = 0;
  std::size_t reduce_met_target = 0;
  std::size_t segment_iterations = 0;
  // Sees every separator as built (global ids), before the segment uses it.
  std::function<void(std::size_t level, NodeId root, const std::vector<Path>& paths)> on_separator;
};

namespace detail {

struct DfsAaShared {
  PassMux* mux;
  std::vector<NodeId>* parent;
  std::size_t k;
  std::size_t s;
  DfsAaOptions opt;
  DfsAaStats* stats;
};

// One subproblem: a connected node set on its own lane, rooted at `root`
// (lane-local), hanging below `above` (global, kNoNode at the top).
inline Task<void> dfs_aa_job(DfsAaShared sh, PassMux::Lane lane, NodeId root, NodeId above, std::size_t level,
                             std::uint64_t seed) {
  DfsAaStats& st = *sh.stats;
  ++st.subproblems;
  st.max_level = std::max(st.max_level, level);
  const std::size_t m = lane.size();
  (*sh.parent)[lane.global(root)] = above;
  if (m == 1) co_return;
  if (m == 2) {
    (*sh.parent)[lane.global(1 - root)] = lane.global(root);
    co_return;
  }

  InitialSegment seg;
  for (unsigned attempt = 0;; ++attempt) {
    bool ok = true;
    SegmentStats ss;
    try {
      seg = co_await co_initial_segment(lane, root, std::min(sh.k, m), std::min(sh.s, std::min(sh.k, m)),
                                        derive_seed(seed, "dfs.segment", attempt), &ss);
    } catch (const RetryableFailure&) {
      if (attempt + 1 >= sh.opt.attempts) throw;
      ok = false;
      ++st.retries;
    }
    if (ok) {
      st.max_separator = std::max(st.max_separator, ss.separator.final_size);
      st.max_stage1_iterations = std::max(st.max_stage1_iterations, ss.separator.reduce.max_stage1_iterations);
      st.reduce_calls += ss.separator.reduce.calls;
      st.reduce_met_target += ss.separator.reduce.met_target;
      st.segment_iterations += ss.iterations;
      break;
    }
  }
  if (st.on_separator) {
    std::vector<Path> global = seg.separator.paths;
    for (Path& p : global) {
      for (NodeId& v : p) v = lane.global(v);
    }
    st.on_separator(level, lane.global(root), global);
  }

  for (NodeId v = 0; v < m; ++v) {
    if (v != root && seg.contains(v)) (*sh.parent)[lane.global(v)] = lane.global(seg.parent[v]);
  }
  for (std::size_t c = 0; c < seg.components.size(); ++c) {
    const SegmentComponent& comp = seg.components[c];
    std::vector<NodeId> globals;
    globals.reserve(comp.nodes.size());
    NodeId child_root = kNoNode;
    for (NodeId v : comp.nodes) {
      if (v == comp.entry) child_root = static_cast<NodeId>(globals.size());
      globals.push_back(lane.global(v));
    }
    const NodeId anchor = lane.global(comp.anchor);
    PassMux::Lane child = sh.mux->make_lane(std::move(globals));
    sh.mux->spawn(dfs_aa_job(sh, child, child_root, anchor, level + 1, derive_seed(seed, "dfs.child", c)));
  }
}

}  // namespace detail

/// DFS tree rooted at r in the style of Aggarwal and Anderson: an initial
/// segment whose removal leaves components of at most half the size, each
/// component solved recursively below its portal. Sibling subproblems run
/// as coroutines on disjoint lanes and share every pass.
inline RootedTree dfs_aa(const GraphStream& stream, Meter& meter, NodeId r, std::size_t k, std::size_t s,
                         const DfsAaOptions& opt = {}, DfsAaStats* stats = nullptr) {
  const std::size_t n = stream.num_nodes();
  if (r >= n) throw DomainError("root out of range");
  if (s == 0 || k == 0 || s > k) throw DomainError("dfs_aa needs 1 <= s <= k");
  DfsAaStats local;
  std::vector<NodeId> parent(n, kNoNode);
  PassMux mux(stream, meter);
  auto acct = meter.track("dfs.parents", [&] { return n; });
  // Local ids on the first lane put r first so the job sees root 0.
  std::vector<NodeId> order(n);
  for (NodeId v = 0; v < n; ++v) order[v] = v;
  std::swap(order[0], order[r]);
  std::sort(order.begin() + 1, order.end());
  PassMux::Lane top = mux.make_lane(std::move(order));
  detail::DfsAaShared sh{&mux, &parent, k, s, opt, stats != nullptr ? stats : &local};
  mux.spawn(detail::dfs_aa_job(sh, top, 0, kNoNode, 0, opt.seed));
  mux.run();
  return RootedTree::from_parents(r, std::move(parent));
}

}  // namespace semistream
