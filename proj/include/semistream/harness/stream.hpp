#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "semistream/core/graph.hpp"
#include "semistream/core/rng.hpp"
#include "semistream/core/types.hpp"

namespace semistream {

enum class StreamModel { InsertionOnly, Turnstile };

inline const char* to_string(StreamModel m) {
  return m == StreamModel::InsertionOnly ? "ins" : "turn";
}

/// One signed edge update. sign is +1 (insert) or -1 (delete).
struct EdgeUpdate {
  NodeId u = 0;
  NodeId v = 0;
  int sign = +1;

  [[nodiscard]] Edge edge() const { return Edge(u, v); }
  friend bool operator==(const EdgeUpdate&, const EdgeUpdate&) = default;
};

/// Immutable, replayable edge stream over dense node ids [0, n).
///
/// Copies share the update buffer, so a stream can be handed to several
/// concurrent runs. Algorithms must read it through PassReader so every
/// traversal is metered.
class GraphStream {
 public:
  GraphStream() : updates_(std::make_shared<const std::vector<EdgeUpdate>>()) {}

  /// Validates ids, self-loops and (for insertion-only) signs.
  GraphStream(std::size_t n, std::vector<EdgeUpdate> updates, StreamModel model)
      : n_(n), model_(model) {
    for (const auto& up : updates) {
      if (up.u >= n || up.v >= n) {
        throw MalformedStream("update (" + std::to_string(up.u) + "," + std::to_string(up.v) +
                              ") references a node >= n=" + std::to_string(n));
      }
      if (up.u == up.v) throw MalformedStream("self-loop at node " + std::to_string(up.u));
      if (up.sign != 1 && up.sign != -1) throw MalformedStream("sign must be +1 or -1");
      if (model == StreamModel::InsertionOnly && up.sign != 1) {
        throw MalformedStream("deletion in an insertion-only stream");
      }
    }
    updates_ = std::make_shared<const std::vector<EdgeUpdate>>(std::move(updates));
  }

  static GraphStream insertion_only(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<EdgeUpdate> ups;
    ups.reserve(edges.size());
    for (const Edge& e : edges) ups.push_back({e.u, e.v, +1});
    return GraphStream(n, std::move(ups), StreamModel::InsertionOnly);
  }

  [[nodiscard]] std::size_t num_nodes() const { return n_; }
  [[nodiscard]] StreamModel model() const { return model_; }
  [[nodiscard]] bool turnstile() const { return model_ == StreamModel::Turnstile; }
  [[nodiscard]] std::size_t num_updates() const { return updates_->size(); }

  /// Raw access for oracle-side code and serialization only.
  [[nodiscard]] const std::vector<EdgeUpdate>& updates_unmetered() const { return *updates_; }

 private:
  std::size_t n_ = 0;
  StreamModel model_ = StreamModel::InsertionOnly;
  std::shared_ptr<const std::vector<EdgeUpdate>> updates_;
};

/// Final edge set of a stream. Oracle-side only; never called from a
/// metered algorithm. Throws MalformedStream if a running multiplicity
/// leaves {0, 1}.
inline std::vector<Edge> final_edges(const GraphStream& s) {
  std::unordered_map<std::uint64_t, int> mult;
  const std::size_t n = s.num_nodes();
  for (const auto& up : s.updates_unmetered()) {
    int& m = mult[edge_index(up.edge(), n)];
    m += up.sign;
    if (m < 0 || m > 1) {
      throw MalformedStream("edge (" + std::to_string(up.edge().u) + "," + std::to_string(up.edge().v) +
                            ") reaches multiplicity " + std::to_string(m));
    }
  }
  std::vector<Edge> out;
  for (const auto& [idx, m] : mult) {
    if (m == 1) out.push_back(edge_from_index(idx, n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline AdjacencyGraph materialize(const GraphStream& s) {
  const auto es = final_edges(s);
  return AdjacencyGraph::from_edges(s.num_nodes(), es);
}

/// Rewrites a graph as a turnstile stream with the same final edge set:
/// edges arrive in shuffled order, `churn` extra non-edges are inserted and
/// later deleted, and a fraction of real edges is deleted and re-inserted.
inline GraphStream with_churn(std::size_t n, const std::vector<Edge>& edges, std::uint64_t seed,
                              double churn = 0.5) {
  auto rng = make_rng(seed, "with_churn");
  std::vector<EdgeUpdate> ups;
  std::vector<Edge> order = edges;
  shuffle_range(order.begin(), order.end(), rng);

  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  const auto extra_target = static_cast<std::size_t>(churn * static_cast<double>(edges.size()));
  std::vector<Edge> fakes;
  const std::size_t max_pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
  if (max_pairs > edges.size()) {
    std::size_t attempts = 0;
    while (fakes.size() < extra_target && attempts < 20 * (extra_target + 1)) {
      ++attempts;
      const auto a = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
      const auto b = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
      if (a == b) continue;
      const Edge e(a, b);
      if (std::binary_search(sorted.begin(), sorted.end(), e)) continue;
      if (std::find(fakes.begin(), fakes.end(), e) != fakes.end()) continue;
      fakes.push_back(e);
    }
  }
  // Interleave: fakes go in early, real edges follow, fakes leave, and some
  // real edges bounce out and back.
  for (const Edge& f : fakes) ups.push_back({f.u, f.v, +1});
  for (std::size_t i = 0; i < order.size(); ++i) {
    ups.push_back({order[i].u, order[i].v, +1});
    if (i < fakes.size()) ups.push_back({fakes[i].u, fakes[i].v, -1});
  }
  for (std::size_t i = order.size(); i < fakes.size(); ++i) ups.push_back({fakes[i].u, fakes[i].v, -1});
  for (const Edge& e : order) {
    if (bernoulli(rng, churn * 0.5)) {
      ups.push_back({e.v, e.u, -1});
      ups.push_back({e.u, e.v, +1});
    }
  }
  return GraphStream(n, std::move(ups), StreamModel::Turnstile);
}

}  // namespace semistream
