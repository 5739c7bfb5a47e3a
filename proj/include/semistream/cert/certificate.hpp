#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/core/rng.hpp"
#include "semistream/core/types.hpp"
#include "semistream/harness/meter.hpp"
#include "semistream/sketch/forest_sketch.hpp"

namespace semistream {

enum class CertificateKind { ForestDecomposition, StackedSketch };

/// Sparse subgraph preserving pairwise node connectivity up to s, also
/// after embedding in any supergraph. Edges are sorted.
struct Certificate {
  unsigned s = 1;
  std::vector<Edge> edges;
  CertificateKind provenance = CertificateKind::ForestDecomposition;
};

/// Union of s scan-first search forests: F_i is a BFS forest (roots and
/// neighbours taken in increasing id order) of the graph minus
/// F_1, ..., F_{i-1}. The union has at most s(n-1) edges and preserves
/// min(s, node connectivity) between every pair.
inline std::vector<Edge> scan_first_forests(std::size_t n, const std::vector<Edge>& edges, unsigned s) {
  std::vector<std::vector<std::pair<NodeId, std::uint32_t>>> adj(n);
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint32_t id = 0; id < sorted.size(); ++id) {
    adj[sorted[id].u].emplace_back(sorted[id].v, id);
    adj[sorted[id].v].emplace_back(sorted[id].u, id);
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());
  std::vector<bool> taken(sorted.size(), false);
  std::vector<Edge> out;
  std::vector<bool> visited(n);
  std::deque<NodeId> queue;
  for (unsigned i = 0; i < s; ++i) {
    std::fill(visited.begin(), visited.end(), false);
    std::size_t grown = 0;
    for (NodeId r = 0; r < n; ++r) {
      if (visited[r]) continue;
      visited[r] = true;
      queue.push_back(r);
      while (!queue.empty()) {
        const NodeId x = queue.front();
        queue.pop_front();
        for (const auto& [y, id] : adj[x]) {
          if (taken[id] || visited[y]) continue;
          visited[y] = true;
          taken[id] = true;
          out.push_back(sorted[id]);
          queue.push_back(y);
          ++grown;
        }
      }
    }
    if (grown == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// One-pass insertion-only certificate builder.
///
/// Keeps the current certificate K plus a buffer of up to s*n new edges;
/// a full buffer is folded in by recomputing the scan-first forests of
/// K + buffer. Composing certificates this way stays a certificate because
/// each step is one for every supergraph. Callers feed it edges from a
/// pass they own, so several builders can share one pass.
class InsertionCertificateBuilder {
 public:
  InsertionCertificateBuilder(std::size_t n, unsigned s) : n_(n), s_(s == 0 ? 1 : s) {
    buffer_cap_ = std::max<std::size_t>(1, static_cast<std::size_t>(s_) * n_);
  }

  void add(const Edge& e) {
    buffer_.push_back(e);
    if (buffer_.size() >= buffer_cap_) fold();
  }

  Certificate finish() {
    fold();
    return {s_, cert_, CertificateKind::ForestDecomposition};
  }

  /// Words held: two per stored edge.
  [[nodiscard]] std::size_t words() const { return 2 * (cert_.size() + buffer_.size()); }

 private:
  void fold() {
    if (buffer_.empty()) return;
    cert_.insert(cert_.end(), buffer_.begin(), buffer_.end());
    buffer_.clear();
    cert_ = scan_first_forests(n_, cert_, s_);
  }

  std::size_t n_;
  unsigned s_;
  std::size_t buffer_cap_;
  std::vector<Edge> cert_;
  std::vector<Edge> buffer_;
};

struct StackedSketchOptions {
  double c = 4.0;  // layers = s * (s + c * ceil(log2 n)); s = 1 uses one layer
  ForestSketchOptions forest{};
};

/// One-pass turnstile certificate builder.
///
/// Layer 0 sketches the whole graph; every further layer sketches G[V_j]
/// for a vertex sample V_j that keeps each node with probability 1/s.
/// Decoding walks the layers in order: the edges already in the
/// certificate that lie inside V_j are subtracted from layer j by
/// linearity, then a spanning forest of what remains is decoded and added.
class TurnstileCertificateBuilder {
 public:
  TurnstileCertificateBuilder(std::size_t n, unsigned s, std::uint64_t seed, const StackedSketchOptions& opt = {})
      : n_(n), s_(s == 0 ? 1 : s) {
    const std::size_t layers = layer_count(n, s_, opt.c);
    auto rng = make_rng(seed, "cert.layers");
    for (std::size_t j = 0; j < layers; ++j) {
      std::vector<bool> mask(n, true);
      if (j > 0) {
        for (NodeId v = 0; v < n; ++v) mask[v] = bernoulli(rng, 1.0 / s_);
      }
      layers_.emplace_back(n, derive_seed(seed, "cert.layer", j), opt.forest, std::move(mask));
    }
  }

  static std::size_t layer_count(std::size_t n, unsigned s, double c) {
    if (s <= 1) return 1;
    const double per = static_cast<double>(s) + c * static_cast<double>(std::max(1u, ceil_log2(n)));
    return static_cast<std::size_t>(std::ceil(static_cast<double>(s) * per));
  }

  void add(NodeId a, NodeId b, int sign) {
    for (auto& layer : layers_) layer.update(a, b, sign);
  }

  /// Throws RetryableFailure if some layer fails to decode.
  Certificate finish() {
    std::vector<Edge> cert;
    for (auto& layer : layers_) {
      for (const Edge& e : cert) {
        if (layer.in_mask(e.u) && layer.in_mask(e.v)) layer.subtract(e);
      }
      const auto forest = layer.decode();
      if (!forest) throw RetryableFailure("certificate layer failed to decode");
      cert.insert(cert.end(), forest->begin(), forest->end());
    }
    std::sort(cert.begin(), cert.end());
    cert.erase(std::unique(cert.begin(), cert.end()), cert.end());
    return {s_, std::move(cert), CertificateKind::StackedSketch};
  }

  [[nodiscard]] std::size_t words() const {
    std::size_t w = 0;
    for (const auto& l : layers_) w += l.words();
    return w;
  }

  [[nodiscard]] std::size_t num_layers() const { return layers_.size(); }

 private:
  std::size_t n_;
  unsigned s_;
  std::vector<ForestSketch> layers_;
};

/// Insertion-only certificate in one deterministic pass.
inline Certificate vc_certificate_insertion(const GraphStream& stream, Meter& meter, unsigned s) {
  if (stream.turnstile()) throw DomainError("vc_certificate_insertion needs an insertion-only stream");
  InsertionCertificateBuilder b(stream.num_nodes(), s);
  auto acct = meter.track("certificate", [&] { return b.words(); });
  stream_pass(stream, meter, [&](const EdgeUpdate& up) { b.add(up.edge()); });
  auto cert = b.finish();
  meter.checkpoint();
  return cert;
}

/// Turnstile certificate in one pass; throws RetryableFailure on a decode
/// failure.
inline Certificate vc_certificate_turnstile(const GraphStream& stream, Meter& meter, unsigned s, std::uint64_t seed,
                                            const StackedSketchOptions& opt = {}) {
  TurnstileCertificateBuilder b(stream.num_nodes(), s, seed, opt);
  auto acct = meter.track("certificate.sketch", [&] { return b.words(); });
  stream_pass(stream, meter, [&](const EdgeUpdate& up) { b.add(up.u, up.v, up.sign); });
  return b.finish();
}

/// Dispatch on the stream model.
inline Certificate vc_certificate(const GraphStream& stream, Meter& meter, unsigned s, std::uint64_t seed) {
  return stream.turnstile() ? vc_certificate_turnstile(stream, meter, s, seed)
                            : vc_certificate_insertion(stream, meter, s);
}

}  // namespace semistream
