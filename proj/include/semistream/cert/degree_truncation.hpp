#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "semistream/core/types.hpp"
#include "semistream/harness/meter.hpp"
#include "semistream/sketch/l0_sampler.hpp"

namespace semistream {

/// S_k(G): a subgraph in which every node x keeps at least
/// min(deg_G(x), k) of its incident edges. Edges are sorted.
struct DegreeTruncation {
  std::size_t k = 0;
  std::vector<Edge> edges;
};

/// Insertion-only rule: an edge is kept when either endpoint still has
/// quota left. Counting an edge against both endpoints keeps the total at
/// most k*n.
class InsertionTruncationBuilder {
 public:
  InsertionTruncationBuilder(std::size_t n, std::size_t k) : k_(k), used_(n, 0) {}

  void add(const Edge& e) {
    if (used_[e.u] >= k_ && used_[e.v] >= k_) return;
    ++used_[e.u];
    ++used_[e.v];
    edges_.push_back(e);
  }

  DegreeTruncation finish() {
    std::sort(edges_.begin(), edges_.end());
    return {k_, edges_};
  }

  [[nodiscard]] std::size_t words() const { return used_.size() + 2 * edges_.size(); }

 private:
  std::size_t k_;
  std::vector<std::size_t> used_;
  std::vector<Edge> edges_;
};

/// Turnstile rule: one bucketed l0 sketch per node over its neighbour
/// vector. Decoding peels: recovered neighbours are subtracted and the
/// sketch decoded again until nothing new appears. The exact final degree
/// comes from the level-0 counters, so a shortfall is always detected.
class TurnstileTruncationBuilder {
 public:
  TurnstileTruncationBuilder(std::size_t n, std::size_t k, std::uint64_t seed) : n_(n), k_(k) {
    L0Params prm;
    prm.levels = L0Params::levels_for(std::max<std::size_t>(n, 1));
    prm.buckets = static_cast<unsigned>(2 * std::max<std::size_t>(1, std::min(k, n)));
    hashes_ = std::make_shared<const L0Hashes>(std::max<std::size_t>(n, 1), derive_seed(seed, "truncation"), prm);
    sketches_.reserve(n);
    for (std::size_t v = 0; v < n; ++v) sketches_.emplace_back(hashes_);
  }

  void add(NodeId a, NodeId b, int sign) {
    sketches_[a].update(b, sign);
    sketches_[b].update(a, sign);
  }

  /// Throws RetryableFailure if some node yields fewer than
  /// min(deg, k) distinct neighbours.
  DegreeTruncation finish() const {
    std::vector<Edge> edges;
    for (NodeId v = 0; v < n_; ++v) {
      const auto deg = static_cast<std::size_t>(std::max<std::int64_t>(0, sketches_[v].total()));
      const auto want = std::min(deg, k_);
      if (want == 0) continue;
      auto got = peel(sketches_[v]);
      if (got.size() < want) throw RetryableFailure("degree truncation recovered too few neighbours");
      got.resize(want);
      for (auto w : got) edges.emplace_back(v, static_cast<NodeId>(w));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return {k_, std::move(edges)};
  }

  [[nodiscard]] std::size_t words() const { return sketches_.empty() ? 0 : n_ * sketches_[0].words(); }

 private:
  std::vector<std::uint64_t> peel(L0Sketch sk) const {
    std::vector<std::uint64_t> found;
    for (;;) {
      const auto fresh = sk.recover_all();
      if (fresh.empty()) break;
      for (auto x : fresh) {
        if (x >= n_) return found;  // fingerprint collision; give up on this node
        sk.update(x, -1);
        found.push_back(x);
      }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
  }

  std::size_t n_;
  std::size_t k_;
  std::shared_ptr<const L0Hashes> hashes_;
  std::vector<L0Sketch> sketches_;
};

inline DegreeTruncation degree_truncate(const GraphStream& stream, Meter& meter, std::size_t k, std::uint64_t seed = 0) {
  const std::size_t n = stream.num_nodes();
  if (!stream.turnstile()) {
    InsertionTruncationBuilder b(n, k);
    auto acct = meter.track("truncation", [&] { return b.words(); });
    stream_pass(stream, meter, [&](const EdgeUpdate& up) { b.add(up.edge()); });
    return b.finish();
  }
  TurnstileTruncationBuilder b(n, k, seed);
  auto acct = meter.track("truncation.sketch", [&] { return b.words(); });
  stream_pass(stream, meter, [&](const EdgeUpdate& up) { b.add(up.u, up.v, up.sign); });
  return b.finish();
}

}  // namespace semistream
