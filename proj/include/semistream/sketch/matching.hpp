#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "semistream/core/rng.hpp"
#include "semistream/core/types.hpp"
#include "semistream/harness/pass_mux.hpp"
#include "semistream/harness/meter.hpp"
#include "semistream/sketch/forest_sketch.hpp"
#include "semistream/sketch/l0_sampler.hpp"

namespace semistream {

/// Candidate edges for a matching: (a, b) qualifies when one endpoint
/// passes `left` and the other passes `right`. Empty predicates accept
/// every node, so the default filter is the whole graph.
struct MatchingFilter {
  std::function<bool(NodeId)> left;
  std::function<bool(NodeId)> right;

  [[nodiscard]] bool is_left(NodeId v) const { return !left || left(v); }
  [[nodiscard]] bool is_right(NodeId v) const { return !right || right(v); }
  [[nodiscard]] bool candidate(NodeId a, NodeId b) const {
    return (is_left(a) && is_right(b)) || (is_left(b) && is_right(a));
  }
  [[nodiscard]] bool participates(NodeId v) const { return is_left(v) || is_right(v); }
};

struct MatchingOptions {
  std::uint64_t seed = 0;
  unsigned max_rounds = 0;  // turnstile only; 0 = 4*ceil(log2 n) + 8
  unsigned reps = 0;  // 0 = derived from n
};

/// Maximal matching of the candidate edges inside one lane (lane-local
/// ids, including in the filter).
///
/// Insertion-only: greedy, one pass. Turnstile: Israeli-Itai style rounds,
/// one pass each. Every unmatched node keeps an ℓ0 sampler over its
/// unmatched candidate neighbours; sampled proposals are matched greedily
/// in random order. The loop ends once every sampler reports Empty, which
/// certifies maximality. Throws RetryableFailure if the round cap is hit.
inline Task<std::vector<Edge>> co_maximal_matching(PassMux::Lane lane, MatchingFilter filter, MatchingOptions opt) {
  const std::size_t n = lane.size();
  Meter& meter = lane.mux().meter();
  std::vector<NodeId> mate(n, kNoNode);
  std::vector<Edge> matching;
  auto account = meter.track("matching", [&] { return n + 2 * matching.size(); });

  if (!lane.turnstile()) {
    PassMux::Handler greedy = [&](NodeId a, NodeId b, int) {
      if (mate[a] == kNoNode && mate[b] == kNoNode && filter.candidate(a, b)) {
        mate[a] = b;
        mate[b] = a;
        matching.emplace_back(a, b);
      }
    };
    co_await lane.pass(std::move(greedy));
    std::sort(matching.begin(), matching.end());
    co_return matching;
  }

  const unsigned cap = opt.max_rounds != 0 ? opt.max_rounds : 4 * ceil_log2(n) + 8;
  std::vector<bool> done(n, false);
  for (NodeId v = 0; v < n; ++v) done[v] = !filter.participates(v);
  L0Params prm;
  prm.reps = opt.reps;
  prm.levels = L0Params::levels_for(n);
  bool settled = false;
  for (unsigned round = 0; round < cap && !settled; ++round) {
    auto hashes = std::make_shared<const L0Hashes>(std::max<std::size_t>(n, 1),
                                                   derive_seed(opt.seed, "matching.round", round), prm);
    std::vector<L0Sketch> sampler(n);
    std::vector<NodeId> active;
    for (NodeId v = 0; v < n; ++v) {
      if (!done[v] && mate[v] == kNoNode) {
        sampler[v] = L0Sketch(hashes);
        active.push_back(v);
      }
    }
    if (active.empty()) break;
    auto sk_account = meter.track("matching.samplers", [&] { return active.size() * sampler[active[0]].words(); });
    PassMux::Handler feed = [&](NodeId a, NodeId b, int sign) {
      if (done[a] || done[b] || mate[a] != kNoNode || mate[b] != kNoNode) return;
      if (!filter.candidate(a, b)) return;
      const auto pa = place(*hashes, b);
      const auto pb = place(*hashes, a);
      sampler[a].apply(pa, sign);
      sampler[b].apply(pb, sign);
    };
    co_await lane.pass(std::move(feed));
    std::vector<Edge> proposals;
    bool any_pending = false;
    for (NodeId v : active) {
      const auto res = sampler[v].query();
      if (res.status == L0Status::Empty) {
        done[v] = true;
      } else {
        any_pending = true;
        if (res.found() && res.index < n && res.index != v) proposals.emplace_back(v, static_cast<NodeId>(res.index));
      }
    }
    if (!any_pending) {
      settled = true;
      break;
    }
    auto rng = make_rng(opt.seed, "matching.order", round);
    shuffle_range(proposals.begin(), proposals.end(), rng);
    for (const Edge& e : proposals) {
      if (mate[e.u] == kNoNode && mate[e.v] == kNoNode) {
        mate[e.u] = e.v;
        mate[e.v] = e.u;
        matching.push_back(e);
      }
    }
  }
  if (!settled) {
    // Either no unmatched node is left, or the round cap cut the loop off.
    bool all_settled = true;
    for (NodeId v = 0; v < n; ++v) all_settled = all_settled && (done[v] || mate[v] != kNoNode);
    if (!all_settled) throw RetryableFailure("maximal matching did not converge within the round cap");
  }
  std::sort(matching.begin(), matching.end());
  co_return matching;
}

/// Maximal matching of the candidate edges of the stream's final graph.
inline std::vector<Edge> maximal_matching(const GraphStream& stream, Meter& meter, const MatchingFilter& filter,
                                          const MatchingOptions& opt = {}) {
  return run_on_stream<std::vector<Edge>>(stream, meter,
                                          [&](PassMux::Lane lane) { return co_maximal_matching(lane, filter, opt); });
}

}  // namespace semistream
