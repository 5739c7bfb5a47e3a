#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "semistream/core/rng.hpp"
#include "semistream/core/types.hpp"
#include "semistream/core/union_find.hpp"
#include "semistream/sketch/l0_sampler.hpp"

namespace semistream {

struct ForestSketchOptions {
  unsigned rounds = 0;  // 0 = ceil(log2 n), at least 1
  unsigned reps = 4;
  unsigned buckets = 2;
  unsigned independence = 8;
};

inline unsigned ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

/// Per-node incidence sketches for spanning-forest recovery.
///
/// Edge (u, v) with u < v is item u*n+v, entered with +1 at u and -1 at v,
/// so summing the sketches of a node set cancels its internal edges and
/// leaves exactly the cut edges. Borůvka round r reads only round-r
/// sketches. An optional node mask restricts the sketch to an induced
/// subgraph: updates touching an unmasked node are ignored.
class ForestSketch {
 public:
  ForestSketch() = default;

  ForestSketch(std::size_t n, std::uint64_t seed, const ForestSketchOptions& opt = {},
               std::vector<bool> mask = {})
      : n_(n), seed_(seed), opt_(opt), mask_(std::move(mask)) {
    if (mask_.empty()) mask_.assign(n, true);
    if (opt_.rounds == 0) opt_.rounds = std::max(1u, ceil_log2(n));
    const std::uint64_t universe = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n) * n);
    L0Params prm;
    prm.reps = opt_.reps;
    prm.buckets = opt_.buckets;
    prm.independence = opt_.independence;
    prm.levels = L0Params::levels_for(universe);
    for (unsigned r = 0; r < opt_.rounds; ++r) {
      hashes_.push_back(std::make_shared<const L0Hashes>(universe, derive_seed(seed, "forest.round", r), prm));
    }
    sketches_.resize(opt_.rounds);
    for (unsigned r = 0; r < opt_.rounds; ++r) {
      sketches_[r].resize(n);
      for (NodeId v = 0; v < n; ++v) {
        if (mask_[v]) sketches_[r][v] = L0Sketch(hashes_[r]);
      }
    }
  }

  void update(NodeId a, NodeId b, int sign) {
    if (!mask_[a] || !mask_[b]) return;
    const Edge e(a, b);
    const std::uint64_t idx = edge_index(e, n_);
    for (unsigned r = 0; r < opt_.rounds; ++r) {
      const auto p = place(*hashes_[r], idx);
      sketches_[r][e.u].apply(p, sign);
      sketches_[r][e.v].apply(p, -sign);
    }
  }

  /// Removes a known edge by linearity (used to peel decoded forests).
  void subtract(const Edge& e) { update(e.u, e.v, -1); }

  [[nodiscard]] bool in_mask(NodeId v) const { return mask_[v]; }

  /// Borůvka decoding. Returns a spanning forest of the sketched graph, or
  /// nullopt if some component could not be closed off (sampler failure).
  [[nodiscard]] std::optional<std::vector<Edge>> decode() const {
    UnionFind uf(n_);
    std::vector<Edge> forest;
    std::vector<NodeId> members;
    for (unsigned r = 0; r < opt_.rounds; ++r) {
      auto groups = components(uf);
      bool all_closed = true;
      std::vector<Edge> found;
      for (const auto& comp : groups) {
        L0Sketch sum(hashes_[r]);
        for (NodeId v : comp) sum += sketches_[r][v];
        const auto res = sum.query();
        if (res.status == L0Status::Empty) continue;
        all_closed = false;
        if (!res.found() || res.index >= static_cast<std::uint64_t>(n_) * n_) continue;
        const Edge e = edge_from_index(res.index, n_);
        if (e.u == e.v || !mask_[e.u] || !mask_[e.v]) continue;
        // A genuine cut edge has exactly one endpoint inside the component.
        const NodeId root = uf.find(comp.front());
        if ((uf.find(e.u) == root) == (uf.find(e.v) == root)) continue;
        found.push_back(e);
      }
      if (all_closed) return sorted(std::move(forest));
      for (const Edge& e : found) {
        if (uf.unite(e.u, e.v)) forest.push_back(e);
      }
    }
    // Round budget spent: every remaining component must have an empty cut.
    for (const auto& comp : components(uf)) {
      L0Sketch sum(hashes_[0]);
      for (NodeId v : comp) sum += sketches_[0][v];
      if (!sum.empty()) return std::nullopt;
    }
    return sorted(std::move(forest));
  }

  /// Like decode() but throws RetryableFailure.
  [[nodiscard]] std::vector<Edge> decode_or_throw() const {
    auto f = decode();
    if (!f) throw RetryableFailure("forest sketch decode failed");
    return std::move(*f);
  }

  [[nodiscard]] std::size_t words() const {
    std::size_t w = 0;
    for (const auto& round : sketches_) {
      for (NodeId v = 0; v < n_; ++v) {
        if (mask_[v]) w += round[v].words();
      }
    }
    return w;
  }

  [[nodiscard]] std::size_t num_nodes() const { return n_; }
  [[nodiscard]] unsigned rounds() const { return opt_.rounds; }
  [[nodiscard]] const L0Sketch& node_sketch(unsigned round, NodeId v) const { return sketches_[round][v]; }

  friend bool operator==(const ForestSketch& a, const ForestSketch& b) {
    return a.n_ == b.n_ && a.seed_ == b.seed_ && a.mask_ == b.mask_ && a.sketches_ == b.sketches_;
  }

  void serialize(std::ostream& out) const {
    binio::put_magic(out, "FSK1");
    binio::put_u32(out, 1);
    binio::put_u64(out, n_);
    binio::put_u64(out, seed_);
    binio::put_u32(out, opt_.rounds);
    binio::put_u32(out, opt_.reps);
    binio::put_u32(out, opt_.buckets);
    binio::put_u32(out, opt_.independence);
    for (NodeId v = 0; v < n_; ++v) out.put(mask_[v] ? 1 : 0);
    for (const auto& round : sketches_) {
      for (NodeId v = 0; v < n_; ++v) {
        if (mask_[v]) round[v].serialize(out);
      }
    }
  }

  static ForestSketch deserialize(std::istream& in) {
    binio::expect_magic(in, "FSK1");
    if (binio::get_u32(in) != 1) throw std::runtime_error("unsupported FSK1 version");
    const auto n = static_cast<std::size_t>(binio::get_u64(in));
    const std::uint64_t seed = binio::get_u64(in);
    ForestSketchOptions opt;
    opt.rounds = binio::get_u32(in);
    opt.reps = binio::get_u32(in);
    opt.buckets = binio::get_u32(in);
    opt.independence = binio::get_u32(in);
    std::vector<bool> mask(n);
    for (std::size_t v = 0; v < n; ++v) {
      const int c = in.get();
      if (c == std::char_traits<char>::eof()) throw std::runtime_error("truncated sketch blob");
      mask[v] = c != 0;
    }
    ForestSketch fs(n, seed, opt, mask);
    for (unsigned r = 0; r < opt.rounds; ++r) {
      for (NodeId v = 0; v < n; ++v) {
        if (!mask[v]) continue;
        L0Sketch loaded = L0Sketch::deserialize(in);
        fs.sketches_[r][v] = L0Sketch(fs.hashes_[r]);
        fs.sketches_[r][v] += loaded;
      }
    }
    return fs;
  }

 private:
  std::vector<std::vector<NodeId>> components(UnionFind& uf) const {
    std::vector<std::vector<NodeId>> groups;
    std::vector<NodeId> slot(n_, kNoNode);
    for (NodeId v = 0; v < n_; ++v) {
      if (!mask_[v]) continue;
      const NodeId r = uf.find(v);
      if (slot[r] == kNoNode) {
        slot[r] = static_cast<NodeId>(groups.size());
        groups.emplace_back();
      }
      groups[slot[r]].push_back(v);
    }
    return groups;
  }

  static std::vector<Edge> sorted(std::vector<Edge> es) {
    std::sort(es.begin(), es.end());
    return es;
  }

  std::size_t n_ = 0;
  std::uint64_t seed_ = 0;
  ForestSketchOptions opt_;
  std::vector<bool> mask_;
  std::vector<std::shared_ptr<const L0Hashes>> hashes_;
  std::vector<std::vector<L0Sketch>> sketches_;
};

}  // namespace semistream
