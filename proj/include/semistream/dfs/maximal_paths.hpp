#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "semistream/dfs/lane_ops.hpp"
#include "semistream/dfs/node_flow.hpp"
#include "semistream/dfs/path_system.hpp"
#include "semistream/sketch/matching.hpp"

namespace semistream {

struct MaximalPathsStats {
  std::size_t stage1_iterations = 0;
  std::size_t stage2_batches = 0;
  std::size_t stage1_outputs = 0;
  std::size_t stage2_outputs = 0;
  std::size_t blocked = 0;  // heads that matched a sink group claimed in the same round
};

namespace detail {

/// L[j][v] = 1 + largest position on paths[j] of a neighbour of v, or 0,
/// for masked v. Turnstile streams take a counting pass plus a binary
/// search over the position, all (j, v) pairs in parallel.
inline Task<std::vector<std::vector<std::uint32_t>>> co_path_labels(PassMux::Lane lane, std::vector<Path> paths,
                                                                     std::vector<bool> mask) {
  const std::size_t m = lane.size();
  const std::size_t c = paths.size();
  Meter& meter = lane.mux().meter();
  std::vector<std::uint32_t> on(m, kNoUnit), pos(m, 0);
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < paths[j].size(); ++i) {
      on[paths[j][i]] = static_cast<std::uint32_t>(j);
      pos[paths[j][i]] = static_cast<std::uint32_t>(i + 1);
    }
  }
  std::vector<std::vector<std::uint32_t>> label(c, std::vector<std::uint32_t>(m, 0));
  auto acct = meter.track("labels", [&] { return 2 * m + c * m; });

  if (!lane.turnstile()) {
    PassMux::Handler h = [&](NodeId a, NodeId b, int) {
      if (on[a] != kNoUnit && mask[b]) label[on[a]][b] = std::max(label[on[a]][b], pos[a]);
      if (on[b] != kNoUnit && mask[a]) label[on[b]][a] = std::max(label[on[b]][a], pos[b]);
    };
    co_await lane.pass(std::move(h));
    co_return label;
  }

  // label doubles as the lower end of the search, hi as the upper end.
  std::vector<std::vector<std::int64_t>> count(c, std::vector<std::int64_t>(m, 0));
  std::vector<std::vector<std::uint32_t>> hi(c, std::vector<std::uint32_t>(m, 0));
  std::vector<std::vector<std::uint32_t>> probe(c, std::vector<std::uint32_t>(m, 0));
  auto acct2 = meter.track("labels.search", [&] { return 3 * c * m; });
  {
    PassMux::Handler h = [&](NodeId a, NodeId b, int sign) {
      if (on[a] != kNoUnit && mask[b]) count[on[a]][b] += sign;
      if (on[b] != kNoUnit && mask[a]) count[on[b]][a] += sign;
    };
    co_await lane.pass(std::move(h));
  }
  for (std::size_t j = 0; j < c; ++j) {
    for (NodeId v = 0; v < m; ++v) {
      if (count[j][v] > 0) {
        label[j][v] = 1;
        hi[j][v] = static_cast<std::uint32_t>(paths[j].size());
      }
    }
  }
  for (;;) {
    bool any = false;
    for (std::size_t j = 0; j < c; ++j) {
      for (NodeId v = 0; v < m; ++v) {
        probe[j][v] = 0;
        if (label[j][v] != 0 && label[j][v] < hi[j][v]) {
          probe[j][v] = label[j][v] + (hi[j][v] - label[j][v] + 1) / 2;
          any = true;
        }
        count[j][v] = 0;
      }
    }
    if (!any) break;
    PassMux::Handler h = [&](NodeId a, NodeId b, int sign) {
      if (on[a] != kNoUnit && mask[b] && probe[on[a]][b] != 0 && pos[a] >= probe[on[a]][b]) count[on[a]][b] += sign;
      if (on[b] != kNoUnit && mask[a] && probe[on[b]][a] != 0 && pos[b] >= probe[on[b]][a]) count[on[b]][a] += sign;
    };
    co_await lane.pass(std::move(h));
    for (std::size_t j = 0; j < c; ++j) {
      for (NodeId v = 0; v < m; ++v) {
        if (probe[j][v] == 0) continue;
        if (count[j][v] > 0) {
          label[j][v] = probe[j][v];
        } else {
          hi[j][v] = probe[j][v] - 1;
        }
      }
    }
  }
  co_return label;
}

/// Greedy feasible vector for one batch, checked by unit node-capacity
/// flow on the certificate. Returns, per batch path, the chosen prefix
/// length (0 for none) and the witness path from the first node after the
/// prefix to a sink.
struct BatchChoice {
  std::vector<std::uint32_t> cut;
  std::vector<Path> witness;
};

inline BatchChoice feasible_vector(std::size_t m, const std::vector<bool>& mask, const std::vector<Edge>& cert,
                                   const std::vector<NodeId>& sink_group,
                                   const std::vector<std::vector<std::uint32_t>>& label) {
  const std::size_t c = label.size();
  std::vector<std::size_t> idx(m, kNoUnit);
  std::vector<NodeId> members;
  for (NodeId v = 0; v < m; ++v) {
    if (mask[v]) {
      idx[v] = members.size();
      members.push_back(v);
    }
  }
  const std::size_t q = members.size();
  UnitFlow flow(2 * q + 2);
  const std::size_t src = 2 * q, dst = 2 * q + 1;
  for (std::size_t i = 0; i < q; ++i) flow.add_edge(2 * i, 2 * i + 1);
  // A sink ends every path through it, so no arcs leave one.
  for (const Edge& e : cert) {
    if (sink_group[e.u] == kNoNode) flow.add_edge(2 * idx[e.u] + 1, 2 * idx[e.v]);
    if (sink_group[e.v] == kNoNode) flow.add_edge(2 * idx[e.v] + 1, 2 * idx[e.u]);
  }
  std::vector<std::size_t> group_node(m, kNoUnit);
  std::vector<bool> is_group_node(2 * q + 2, false);
  for (std::size_t i = 0; i < q; ++i) {
    const NodeId g = sink_group[members[i]];
    if (g == kNoNode) continue;
    if (group_node[g] == kNoUnit) {
      group_node[g] = flow.add_node();
      is_group_node.push_back(true);
      flow.add_edge(group_node[g], dst);
    }
    flow.add_edge(2 * i + 1, group_node[g]);
  }

  BatchChoice out;
  out.cut.assign(c, 0);
  out.witness.resize(c);
  std::vector<std::size_t> special(c, kNoUnit);
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<std::uint32_t> cand;
    for (std::size_t i = 0; i < q; ++i) {
      if (label[j][members[i]] != 0) cand.push_back(label[j][members[i]]);
    }
    std::sort(cand.rbegin(), cand.rend());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    if (cand.empty()) continue;
    const std::size_t sj = flow.add_node();
    is_group_node.push_back(false);
    for (std::uint32_t want : cand) {
      const std::size_t mark = flow.edge_mark();
      flow.add_edge(src, sj);
      for (std::size_t i = 0; i < q; ++i) {
        if (label[j][members[i]] == want) flow.add_edge(sj, 2 * i);
      }
      if (flow.augment(src, dst)) {
        out.cut[j] = want;
        special[j] = sj;
        break;
      }
      flow.rollback(mark);
    }
  }

  for (std::size_t j = 0; j < c; ++j) {
    if (special[j] == kNoUnit) continue;
    std::size_t x = flow.flow_out(special[j]).front();
    while (!is_group_node[x]) {
      // x is the in-copy of a member; step to its out-copy, then onwards.
      out.witness[j].push_back(members[x / 2]);
      const std::size_t o = flow.flow_out(x).front();
      x = flow.flow_out(o).front();
    }
  }
  return out;
}

inline void check_paths_params(std::size_t k, std::size_t s) {
  if (s == 0 || k == 0) throw DomainError("MaximalPaths needs k >= 1 and s >= 1");
  if (s > k) throw DomainError("MaximalPaths needs s <= k");
}

}  // namespace detail

/// MaximalPaths on one lane. Stage 1 extends all active paths by a
/// maximal matching between their heads and idle nodes (or free sinks)
/// until fewer than k paths are active; stage 2 handles the rest in
/// batches of s through a strong s-VC certificate of the idle subgraph
/// and a greedily maximised feasible vector.
inline Task<PathSystem> co_maximal_paths(PassMux::Lane lane, MaximalPathsInstance inst, std::size_t k,
                                         std::size_t s, std::uint64_t seed, MaximalPathsStats* stats = nullptr) {
  const std::size_t m = lane.size();
  inst.check(m);
  detail::check_paths_params(k, s);
  MaximalPathsStats local;
  MaximalPathsStats& st = stats != nullptr ? *stats : local;
  Meter& meter = lane.mux().meter();

  enum class State : std::uint8_t { Idle, Active, Dead, Out };
  std::vector<State> state(m, State::Idle);
  std::vector<std::vector<NodeId>> group_members(m);
  bool any_sink = false;
  for (NodeId v = 0; v < m; ++v) {
    const NodeId g = inst.sink_group[v];
    if (g == kNoNode) continue;
    if (g >= m) throw DomainError("sink group id out of range");
    group_members[g].push_back(v);
    any_sink = true;
  }
  PathSystem out;
  if (!any_sink || inst.paths.empty()) co_return out;

  std::vector<Path> act = std::move(inst.paths);
  for (const Path& p : act) {
    for (NodeId v : p) state[v] = State::Active;
  }
  auto acct = meter.track("maximal_paths", [&] { return 2 * m + out.node_count(); });
  auto usable = [&](NodeId v) { return state[v] == State::Idle; };
  auto kill_group = [&](NodeId g) {
    for (NodeId x : group_members[g]) state[x] = State::Dead;
  };

  // Stage 1.
  std::vector<bool> is_head(m, false);
  while (!act.empty() && act.size() >= k) {
    ++st.stage1_iterations;
    std::fill(is_head.begin(), is_head.end(), false);
    for (const Path& p : act) is_head[p.back()] = true;
    MatchingFilter filter{[&](NodeId v) { return is_head[v]; }, [&](NodeId v) { return usable(v); }};
    MatchingOptions mo;
    mo.seed = derive_seed(seed, "paths.stage1", st.stage1_iterations);
    const std::vector<Edge> matching = co_await co_maximal_matching(lane, std::move(filter), mo);
    std::vector<NodeId> mate(m, kNoNode);
    for (const Edge& e : matching) {
      mate[e.u] = e.v;
      mate[e.v] = e.u;
    }
    std::vector<Path> next;
    std::vector<bool> claimed(m, false);
    for (Path& p : act) {
      const NodeId h = p.back();
      const NodeId w = mate[h];
      if (w == kNoNode) {
        state[h] = State::Dead;
        p.pop_back();
        if (!p.empty()) next.push_back(std::move(p));
        continue;
      }
      const NodeId g = inst.sink_group[w];
      if (g == kNoNode) {
        state[w] = State::Active;
        p.push_back(w);
        next.push_back(std::move(p));
      } else if (claimed[g]) {
        ++st.blocked;
        next.push_back(std::move(p));
      } else {
        claimed[g] = true;
        p.push_back(w);
        for (NodeId x : p) state[x] = State::Dead;
        out.paths.push_back(std::move(p));
        ++st.stage1_outputs;
      }
    }
    for (NodeId g = 0; g < m; ++g) {
      if (claimed[g]) kill_group(g);
    }
    act = std::move(next);
  }

  // Stage 2.
  for (std::size_t first = 0; first < act.size(); first += s) {
    ++st.stage2_batches;
    const std::size_t last = std::min(act.size(), first + s);
    std::vector<Path> batch(act.begin() + static_cast<std::ptrdiff_t>(first),
                            act.begin() + static_cast<std::ptrdiff_t>(last));
    std::vector<bool> mask(m, false);
    for (NodeId v = 0; v < m; ++v) mask[v] = usable(v);
    std::vector<Edge> cert;
    for (unsigned attempt = 0;; ++attempt) {
      bool ok = true;
      try {
        cert = co_await detail::co_certificate(lane, mask, static_cast<unsigned>(s),
                                               derive_seed(seed, "paths.cert", st.stage2_batches * 8 + attempt));
      } catch (const RetryableFailure&) {
        if (attempt + 1 >= 5) throw;
        ok = false;
      }
      if (ok) break;
    }
    const auto label = co_await detail::co_path_labels(lane, batch, mask);
    const detail::BatchChoice choice = detail::feasible_vector(m, mask, cert, inst.sink_group, label);
    for (std::size_t j = 0; j < batch.size(); ++j) {
      Path& p = batch[j];
      for (NodeId x : p) state[x] = State::Out;
      if (choice.cut[j] == 0) continue;
      p.resize(choice.cut[j]);
      p.insert(p.end(), choice.witness[j].begin(), choice.witness[j].end());
      for (NodeId x : p) state[x] = State::Dead;
      kill_group(inst.sink_group[p.back()]);
      out.paths.push_back(std::move(p));
      ++st.stage2_outputs;
    }
  }
  co_return out;
}

/// Standalone MaximalPaths over a whole stream.
inline PathSystem maximal_paths(const GraphStream& stream, Meter& meter, const MaximalPathsInstance& inst,
                                std::size_t k, std::size_t s, std::uint64_t seed = 0,
                                MaximalPathsStats* stats = nullptr) {
  return run_on_stream<PathSystem>(stream, meter, [&](PassMux::Lane lane) {
    return co_maximal_paths(lane, inst, k, s, seed, stats);
  });
}

}  // namespace semistream
