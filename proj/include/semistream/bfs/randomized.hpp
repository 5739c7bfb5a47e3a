#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string_view>
#include <vector>

#include "semistream/bfs/common.hpp"
#include "semistream/bfs/local_wave.hpp"
#include "semistream/core/rng.hpp"

namespace semistream {

struct RandomizedBfsOptions {
  double confidence = 3.0;  // C in h = C n ln n / k - 1
  std::uint64_t seed = 0;
  WaveOptions wave{};
};

struct RandomizedBfsStats {
  std::size_t centers = 0;
  Dist h = 0;
  std::size_t step1_passes = 0;
  std::size_t step2_passes = 0;
  std::size_t parent_passes = 0;
};

/// Radius used by the sampled-centre schedule: max(1, ceil(C n ln n / k) - 1).
inline Dist center_radius(std::size_t n, std::size_t k, double confidence) {
  if (k == 0) throw DomainError("k must be positive");
  const double x = confidence * static_cast<double>(n) * std::log(static_cast<double>(std::max<std::size_t>(n, 1))) /
                   static_cast<double>(k);
  const auto h = static_cast<std::int64_t>(std::ceil(x)) - 1;
  return static_cast<Dist>(std::max<std::int64_t>(1, h));
}

namespace detail {

struct Overlay {
  std::vector<NodeId> centers;            // sorted
  std::vector<std::size_t> index_of;      // node -> centre index or npos
  std::vector<std::vector<std::pair<std::size_t, Dist>>> adj;
  Dist h = 0;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Shortest paths on the overlay from a set of centre indices at once.
  std::vector<Dist> dijkstra(const std::vector<std::size_t>& from) const {
    std::vector<Dist> d(centers.size(), kInfDist);
    using Item = std::pair<Dist, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::size_t f : from) {
      d[f] = 0;
      pq.emplace(0, f);
    }
    while (!pq.empty()) {
      const auto [du, u] = pq.top();
      pq.pop();
      if (du != d[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (du + w < d[v]) {
          d[v] = du + w;
          pq.emplace(d[v], v);
        }
      }
    }
    return d;
  }

  std::size_t words() const {
    std::size_t w = 2 * centers.size();
    for (const auto& a : adj) w += 2 * a.size();
    return w;
  }
};

inline std::vector<NodeId> sample_centers(std::size_t n, std::size_t k,
                                          const std::vector<std::vector<NodeId>>& forced, std::uint64_t seed) {
  auto rng = make_rng(seed, "bfs.centers");
  const double p = std::min(1.0, static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(n, 1)));
  std::vector<bool> in(n, false);
  for (const auto& g : forced) {
    for (NodeId f : g) in[f] = true;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (bernoulli(rng, p)) in[v] = true;
  }
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

inline std::vector<std::uint32_t> start_times(std::size_t count, Dist h, std::uint64_t seed, std::string_view tag) {
  auto rng = make_rng(seed, tag);
  std::vector<std::uint32_t> tau(count);
  for (auto& t : tau) t = static_cast<std::uint32_t>(uniform_int(rng, 1, h));
  return tau;
}

// Step 1: local BFS from every centre; distances between centres within
// radius h become overlay edges.
inline Overlay step1(const GraphStream& stream, Meter& meter, std::size_t k,
                     const std::vector<std::vector<NodeId>>& forced,
                     const RandomizedBfsOptions& opt, RandomizedBfsStats& stats) {
  const std::size_t n = stream.num_nodes();
  Overlay ov;
  ov.centers = sample_centers(n, k, forced, opt.seed);
  ov.h = center_radius(n, k, opt.confidence);
  ov.index_of.assign(n, Overlay::npos);
  for (std::size_t i = 0; i < ov.centers.size(); ++i) ov.index_of[ov.centers[i]] = i;
  ov.adj.resize(ov.centers.size());
  auto acct = meter.track("bfs.overlay", [&] { return ov.words(); });
  LocalBfsWave wave(n, ov.centers, start_times(ov.centers.size(), ov.h, opt.seed, "bfs.tau1"), ov.h,
                    derive_seed(opt.seed, "bfs.wave1"), opt.wave);
  wave.run(stream, meter, [&](std::size_t i, NodeId v, Dist d) {
    const std::size_t j = ov.index_of[v];
    if (j != Overlay::npos && j != i) ov.adj[i].emplace_back(j, d);
  });
  stats.centers = ov.centers.size();
  stats.h = ov.h;
  stats.step1_passes = wave.passes();
  // Make the overlay symmetric: a pair seen from one side is enough.
  for (std::size_t i = 0; i < ov.adj.size(); ++i) {
    for (const auto& [j, d] : std::vector<std::pair<std::size_t, Dist>>(ov.adj[i])) ov.adj[j].emplace_back(i, d);
  }
  return ov;
}

// Step 2 for several sources at once: rows[r][v] ends as
// min over centres u near v of dist(source_r, u) + dist(u, v).
inline void step2(const GraphStream& stream, Meter& meter, const Overlay& ov,
                  const std::vector<std::vector<Dist>>& center_dist, std::vector<std::vector<Dist>>& rows,
                  const RandomizedBfsOptions& opt, RandomizedBfsStats& stats) {
  const std::size_t n = stream.num_nodes();
  const std::size_t c = center_dist.size();
  rows.assign(c, std::vector<Dist>(n, kInfDist));
  auto acct = meter.track("bfs.step2", [&] { return c * n; });
  if (!stream.turnstile()) {
    for (std::size_t r = 0; r < c; ++r) {
      for (std::size_t i = 0; i < ov.centers.size(); ++i) rows[r][ov.centers[i]] = center_dist[r][i];
    }
    // Bellman-Ford passes; a pass without change is a fixpoint.
    for (Dist pass = 0; pass < ov.h; ++pass) {
      bool changed = false;
      stream_pass(stream, meter, [&](const EdgeUpdate& up) {
        for (auto& d : rows) {
          if (d[up.u] != kInfDist && d[up.u] + 1 < d[up.v]) {
            d[up.v] = d[up.u] + 1;
            changed = true;
          }
          if (d[up.v] != kInfDist && d[up.v] + 1 < d[up.u]) {
            d[up.u] = d[up.v] + 1;
            changed = true;
          }
        }
      });
      ++stats.step2_passes;
      if (!changed) break;
    }
    return;
  }
  // Turnstile: a second wave with fresh start times.
  LocalBfsWave wave(n, ov.centers, start_times(ov.centers.size(), ov.h, opt.seed, "bfs.tau2"), ov.h,
                    derive_seed(opt.seed, "bfs.wave2"), opt.wave);
  wave.run(stream, meter, [&](std::size_t i, NodeId v, Dist d) {
    for (std::size_t r = 0; r < c; ++r) {
      if (center_dist[r][i] == kInfDist) continue;
      rows[r][v] = std::min(rows[r][v], center_dist[r][i] + d);
    }
  });
  stats.step2_passes = wave.passes();
}

inline std::vector<std::vector<Dist>> overlay_rows(const Overlay& ov, const std::vector<std::vector<NodeId>>& groups) {
  std::vector<std::vector<Dist>> out;
  for (const auto& g : groups) {
    std::vector<std::size_t> from;
    for (NodeId s : g) from.push_back(ov.index_of[s]);
    auto d = ov.dijkstra(from);
    if (std::find(d.begin(), d.end(), kInfDist) != d.end()) throw RetryableFailure("overlay graph is disconnected");
    out.push_back(std::move(d));
  }
  return out;
}

inline void check_sources(std::size_t n, const std::vector<NodeId>& sources, std::size_t k) {
  if (sources.empty()) throw DomainError("no sources given");
  if (sources.size() > k) throw DomainError("more sources than the centre budget k");
  if (k > n) throw DomainError("k exceeds n");
  for (NodeId s : sources) {
    if (s >= n) throw DomainError("source out of range");
  }
}

inline std::vector<std::vector<NodeId>> singletons(const std::vector<NodeId>& s) {
  std::vector<std::vector<NodeId>> out;
  for (NodeId v : s) out.push_back({v});
  return out;
}

// Distance rows, one per group of sources: row r holds the distance from
// every node to the nearest member of groups[r]. Labels are not verified.
inline std::vector<std::vector<Dist>> distance_rows(const GraphStream& stream, Meter& meter,
                                                    const std::vector<std::vector<NodeId>>& groups, std::size_t k,
                                                    const RandomizedBfsOptions& opt, RandomizedBfsStats& stats) {
  const auto ov = step1(stream, meter, k, groups, opt, stats);
  const auto center_dist = overlay_rows(ov, groups);
  std::vector<std::vector<Dist>> rows;
  step2(stream, meter, ov, center_dist, rows, opt, stats);
  return rows;
}

// One pass checking rows from distance_rows: members of the group sit at
// 0, no edge joins labels more than one apart, and every other node has a
// neighbour one level down. Neighbour counts are signed, so deletions in a
// turnstile stream cancel.
inline void verify_rows(const GraphStream& stream, Meter& meter, const std::vector<std::vector<NodeId>>& groups,
                        const std::vector<std::vector<Dist>>& rows) {
  const std::size_t n = stream.num_nodes();
  const std::size_t c = rows.size();
  std::vector<std::vector<std::int64_t>> down(c, std::vector<std::int64_t>(n, 0));
  std::vector<std::int64_t> violations(c, 0);
  auto acct = meter.track("bfs.verify", [&] { return c * n; });
  stream_pass(stream, meter, [&](const EdgeUpdate& up) {
    for (std::size_t r = 0; r < c; ++r) {
      const auto& d = rows[r];
      if (!labels_consistent(d, up.u, up.v)) violations[r] += up.sign;
      if (d[up.u] != kInfDist && d[up.u] + 1 == d[up.v]) down[r][up.v] += up.sign;
      if (d[up.v] != kInfDist && d[up.v] + 1 == d[up.u]) down[r][up.u] += up.sign;
    }
  });
  for (std::size_t r = 0; r < c; ++r) {
    if (violations[r] != 0) throw RetryableFailure("distance labels violate an edge");
    std::vector<bool> member(n, false);
    for (NodeId s : groups[r]) member[s] = true;
    for (NodeId v = 0; v < n; ++v) {
      if (rows[r][v] == kInfDist) throw RetryableFailure("unreached node; graph disconnected or labels incomplete");
      if (member[v] != (rows[r][v] == 0)) throw RetryableFailure("zero labels do not match the source set");
      if (!member[v] && down[r][v] <= 0) throw RetryableFailure("node has no neighbour one level down");
    }
  }
}

}  // namespace detail

/// BFS trees from several sources via sampled centres. Step 1 grows
/// radius-h local BFS from the centres (sources always included) and reads
/// distances between centres off an overlay graph; Step 2 extends them to
/// all nodes; a last pass picks parents and verifies every label.
inline std::vector<BfsResult> multi_bfs(const GraphStream& stream, Meter& meter, const std::vector<NodeId>& sources,
                                        std::size_t k, const RandomizedBfsOptions& opt = {},
                                        RandomizedBfsStats* stats_out = nullptr) {
  const std::size_t n = stream.num_nodes();
  detail::check_sources(n, sources, k);
  RandomizedBfsStats stats;
  auto rows = detail::distance_rows(stream, meter, detail::singletons(sources), k, opt, stats);
  const auto before = meter.passes();
  auto trees = parents_pass(stream, meter, sources, rows, derive_seed(opt.seed, "bfs.parents"));
  stats.parent_passes = meter.passes() - before;
  if (stats_out) *stats_out = stats;
  std::vector<BfsResult> out;
  for (std::size_t r = 0; r < sources.size(); ++r) out.push_back({sources[r], std::move(rows[r]), std::move(trees[r])});
  return out;
}

inline BfsResult bfs_randomized(const GraphStream& stream, Meter& meter, NodeId s, std::size_t k,
                                const RandomizedBfsOptions& opt = {}, RandomizedBfsStats* stats = nullptr) {
  return std::move(multi_bfs(stream, meter, {s}, k, opt, stats)[0]);
}

/// Distances among the nodes of S only: Step 1 with S forced into the
/// centres, then shortest paths on the overlay. No Step 2 is needed.
struct PairwiseTable {
  std::vector<NodeId> nodes;
  std::vector<std::vector<Dist>> dist;  // dist[i][j] between nodes[i] and nodes[j]
};

inline PairwiseTable pairwise_distances(const GraphStream& stream, Meter& meter, const std::vector<NodeId>& S,
                                        std::size_t k, const RandomizedBfsOptions& opt = {},
                                        RandomizedBfsStats* stats_out = nullptr) {
  detail::check_sources(stream.num_nodes(), S, k);
  RandomizedBfsStats stats;
  const auto ov = detail::step1(stream, meter, k, detail::singletons(S), opt, stats);
  const auto rows = detail::overlay_rows(ov, detail::singletons(S));
  PairwiseTable out{S, {}};
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::vector<Dist> row;
    for (NodeId t : S) row.push_back(rows[i][ov.index_of[t]]);
    out.dist.push_back(std::move(row));
  }
  if (stats_out) *stats_out = stats;
  return out;
}

}  // namespace semistream
