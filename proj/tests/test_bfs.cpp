#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "semistream/bfs/deterministic.hpp"
#include "semistream/bfs/diameter.hpp"
#include "semistream/bfs/local_wave.hpp"
#include "semistream/bfs/randomized.hpp"
#include "semistream/bfs/steiner.hpp"
#include "semistream/harness/generators.hpp"
#include "semistream/oracle/distances.hpp"
#include "semistream/oracle/steiner.hpp"

using namespace semistream;

namespace {

AdjacencyGraph graph_of(const EdgeList& el) { return AdjacencyGraph::from_edges(el.n, el.edges); }

std::size_t sqrt_log_k(std::size_t n) {
  const auto r = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const auto l = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n))));
  return std::min(n, r * l);
}

// Largest degree sum along a root-to-leaf path of t.
std::size_t max_path_degree_sum(const AdjacencyGraph& g, const RootedTree& t) {
  const auto rank = t.preorder();
  std::vector<NodeId> order(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) order[rank[v]] = v;
  std::vector<std::size_t> acc(g.num_nodes(), 0);
  std::size_t best = 0;
  for (NodeId v : order) {
    const NodeId p = t.parent(v);
    acc[v] = g.degree(v) + (p == kNoNode ? 0 : acc[p]);
    best = std::max(best, acc[v]);
  }
  return best;
}

bool matches_oracle(const AdjacencyGraph& g, const BfsResult& r) {
  return r.dist == oracle::bfs_distances(g, r.source) && oracle::is_bfs_tree(g, r.tree);
}

// (centre index, node, distance) triples, first sighting only.
std::map<std::pair<std::size_t, NodeId>, Dist> wave_labels(const GraphStream& s, const std::vector<NodeId>& centers,
                                                           const std::vector<std::uint32_t>& tau, Dist h,
                                                           bool truncate) {
  Meter m;
  WaveOptions o;
  o.truncate = truncate;
  LocalBfsWave w(s.num_nodes(), centers, tau, h, 5, o);
  std::map<std::pair<std::size_t, NodeId>, Dist> out;
  w.run(s, m, [&](std::size_t i, NodeId v, Dist d) { out.emplace(std::make_pair(i, v), d); });
  return out;
}

}  // namespace

TEST(DeterministicBfs, PathFromEnd) {
  const auto el = gen::path(30);
  for (std::size_t p : {1u, 5u, 30u}) {
    Meter m;
    const auto r = bfs_deterministic(make_stream(el, StreamModel::InsertionOnly, 3), m, 0, p);
    for (NodeId v = 0; v < 30; ++v) EXPECT_EQ(r.dist[v], v);
    EXPECT_TRUE(oracle::is_bfs_tree(graph_of(el), r.tree));
  }
  // p = 1 stores every edge, so the first pass already finishes the job.
  Meter m;
  bfs_deterministic(make_stream(el, StreamModel::InsertionOnly, 3), m, 0, 1);
  EXPECT_EQ(m.passes(), 2u);
}

TEST(DeterministicBfs, StarTakesTwoPasses) {
  for (std::size_t p : {1u, 3u, 20u}) {
    Meter m;
    const auto r = bfs_deterministic(make_stream(gen::star(20), StreamModel::InsertionOnly, 1), m, 0, p);
    for (NodeId v = 1; v < 20; ++v) EXPECT_EQ(r.dist[v], 1u);
    EXPECT_EQ(m.passes(), 2u);
  }
}

TEST(DeterministicBfs, LayeredBlocks) {
  const auto el = gen::layered_blocks(1000, 25);
  const auto g = graph_of(el);
  Meter m;
  DeterministicBfsStats st;
  const auto r = bfs_deterministic(make_stream(el, StreamModel::InsertionOnly, 9), m, 0, 10, &st);
  EXPECT_TRUE(matches_oracle(g, r));
  EXPECT_LE(max_path_degree_sum(g, r.tree), 3 * g.num_nodes());
  // Every node stores at most ceil(n/p) + (edges kept for the other end).
  EXPECT_LE(m.passes(), 2 * 10 + 2u);
}

TEST(DeterministicBfs, RandomGraphsAgainstOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto el = gen::gnp(120, 0.04, seed);
    const auto g = graph_of(el);
    for (std::size_t p : {2u, 8u, 40u}) {
      Meter m;
      const auto r = bfs_deterministic(make_stream(el, StreamModel::InsertionOnly, seed), m, seed % 120, p);
      EXPECT_TRUE(matches_oracle(g, r)) << "seed " << seed << " p " << p;
      EXPECT_LE(max_path_degree_sum(g, r.tree), 3 * g.num_nodes());
    }
  }
}

TEST(DeterministicBfs, Errors) {
  Meter m;
  EXPECT_THROW(bfs_deterministic(make_stream(gen::path(5), StreamModel::Turnstile, 1), m, 0, 2), DomainError);
  Meter m2;
  EXPECT_THROW(bfs_deterministic(GraphStream::insertion_only(4, {{0, 1}, {2, 3}}), m2, 0, 2), DomainError);
}

TEST(RandomizedBfs, EveryNodeACentre) {
  const auto el = gen::gnp(60, 0.08, 4);
  const auto g = graph_of(el);
  Meter m;
  RandomizedBfsStats st;
  const auto r = bfs_randomized(make_stream(el, StreamModel::InsertionOnly, 4), m, 7, 60, {}, &st);
  EXPECT_EQ(st.centers, 60u);
  EXPECT_TRUE(matches_oracle(g, r));
}

TEST(RandomizedBfs, Star) {
  for (auto model : {StreamModel::InsertionOnly, StreamModel::Turnstile}) {
    Meter m;
    const auto r = bfs_randomized(make_stream(gen::star(25), model, 2), m, 0, 3, {.seed = 11});
    for (NodeId v = 1; v < 25; ++v) EXPECT_EQ(r.dist[v], 1u);
    EXPECT_TRUE(oracle::is_bfs_tree(graph_of(gen::star(25)), r.tree));
  }
}

TEST(RandomizedBfs, SparseRandomGraphInsertionOnly) {
  const auto el = gen::gnp(500, 0.02, 17);
  const auto g = graph_of(el);
  const auto k = sqrt_log_k(500);
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Meter m;
    try {
      const auto r = bfs_randomized(make_stream(el, StreamModel::InsertionOnly, seed), m, 0, k, {.seed = seed});
      ok += matches_oracle(g, r);
      EXPECT_LE(max_path_degree_sum(g, r.tree), 3 * g.num_nodes());
    } catch (const RetryableFailure&) {
    }
  }
  EXPECT_GE(ok, 5);
}

TEST(RandomizedBfs, TurnstileAgainstOracle) {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto el = gen::gnp(70, 0.06, 100 + seed);
    const auto g = graph_of(el);
    Meter m;
    try {
      const auto r = bfs_randomized(make_stream(el, StreamModel::Turnstile, seed), m, 3, 20, {.seed = seed});
      ok += matches_oracle(g, r);
    } catch (const RetryableFailure&) {
    }
  }
  EXPECT_GE(ok, 4);
}

TEST(RandomizedBfs, PassesWithinTwoWaves) {
  const auto el = gen::gnp(200, 0.03, 8);
  Meter m;
  RandomizedBfsStats st;
  bfs_randomized(make_stream(el, StreamModel::InsertionOnly, 8), m, 0, sqrt_log_k(200), {.seed = 8}, &st);
  EXPECT_LE(st.step1_passes + st.step2_passes, 2 * (2 * std::size_t{st.h} - 1));
  EXPECT_EQ(m.passes(), st.step1_passes + st.step2_passes + st.parent_passes);
}

TEST(LocalWave, CongestionStaysNearTheBound) {
  const std::size_t n = 300;
  const auto el = gen::gnp(n, 0.03, 21);
  const auto s = make_stream(el, StreamModel::InsertionOnly, 21);
  const auto k = sqrt_log_k(n);
  const Dist h = center_radius(n, k, 3.0);
  const auto centers = detail::sample_centers(n, k, {{0}}, 21);
  const auto tau = detail::start_times(centers.size(), h, 21, "t");
  std::vector<std::vector<std::uint32_t>> rows;
  Meter m;
  WaveOptions o;
  o.congestion = &rows;
  LocalBfsWave w(n, centers, tau, h, 1, o);
  w.run(s, m, [](std::size_t, NodeId, Dist) {});
  std::uint32_t worst = 0;
  for (const auto& r : rows) worst = std::max(worst, *std::max_element(r.begin(), r.end()));
  const double bound = std::max(std::log(static_cast<double>(n)), static_cast<double>(centers.size()) / h);
  EXPECT_LE(worst, 4.0 * bound);
}

TEST(LocalWave, TruncationKeepsTheOverlay) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const std::size_t n = 150;
    const auto el = gen::gnp(n, 0.03, seed);
    const auto s = make_stream(el, StreamModel::InsertionOnly, seed);
    const auto centers = detail::sample_centers(n, 20, {{0}}, seed);
    const Dist h = center_radius(n, 20, 3.0);
    const auto tau = detail::start_times(centers.size(), h, seed, "t");
    const auto a = wave_labels(s, centers, tau, h, true);
    const auto b = wave_labels(s, centers, tau, h, false);
    EXPECT_EQ(a, b);
    // Labels are exact distances up to h.
    const auto g = graph_of(el);
    for (const auto& [key, d] : a) {
      EXPECT_EQ(d, oracle::bfs_distances(g, centers[key.first])[key.second]);
    }
  }
}

TEST(PairwiseDistances, Fixtures) {
  Meter m;
  const auto adj = pairwise_distances(make_stream(gen::path(10), StreamModel::InsertionOnly, 1), m, {3, 4}, 2);
  EXPECT_EQ(adj.dist[0][1], 1u);
  std::vector<NodeId> all(10);
  for (NodeId v = 0; v < 10; ++v) all[v] = v;
  Meter m2;
  const auto t = pairwise_distances(make_stream(gen::path(10), StreamModel::InsertionOnly, 1), m2, all, 10);
  for (NodeId i = 0; i < 10; ++i) {
    for (NodeId j = 0; j < 10; ++j) EXPECT_EQ(t.dist[i][j], i > j ? i - j : j - i);
  }
}

TEST(PairwiseDistances, RandomAgainstFloydWarshall) {
  const auto el = gen::gnp(300, 0.03, 5);
  const auto fw = oracle::floyd_warshall(graph_of(el));
  auto rng = make_rng(5, "pick");
  std::set<NodeId> pick;
  while (pick.size() < 10) pick.insert(static_cast<NodeId>(uniform_int(rng, 0, 299)));
  const std::vector<NodeId> S(pick.begin(), pick.end());
  for (auto model : {StreamModel::InsertionOnly, StreamModel::Turnstile}) {
    Meter m;
    const auto t = with_retries(5, 3, [&](std::uint64_t sd) {
      return pairwise_distances(make_stream(el, model, 5), m, S, sqrt_log_k(300), {.seed = sd});
    });
    for (std::size_t i = 0; i < S.size(); ++i) {
      for (std::size_t j = 0; j < S.size(); ++j) EXPECT_EQ(t.dist[i][j], fw[S[i]][S[j]]);
    }
  }
}

TEST(MultiBfs, StarCentreAndLeaves) {
  const auto el = gen::star(12);
  Meter m;
  const auto rs = multi_bfs(make_stream(el, StreamModel::InsertionOnly, 1), m, {0, 4, 9}, 3);
  ASSERT_EQ(rs.size(), 3u);
  for (const auto& r : rs) EXPECT_TRUE(matches_oracle(graph_of(el), r));
}

TEST(MultiBfs, FourSourcesRandomGraph) {
  const auto el = gen::gnp(200, 0.05, 12);
  const auto g = graph_of(el);
  Meter m;
  const auto rs = with_retries(12, 3, [&](std::uint64_t sd) {
    return multi_bfs(make_stream(el, StreamModel::InsertionOnly, 12), m, {1, 50, 99, 150}, sqrt_log_k(200),
                     {.seed = sd});
  });
  for (const auto& r : rs) EXPECT_TRUE(matches_oracle(g, r));
}

TEST(MultiBfs, Errors) {
  Meter m;
  const auto s = make_stream(gen::path(6), StreamModel::InsertionOnly, 1);
  EXPECT_THROW(multi_bfs(s, m, {0, 1, 2}, 2), DomainError);
  EXPECT_THROW(multi_bfs(s, m, {}, 2), DomainError);
  EXPECT_THROW(multi_bfs(s, m, {9}, 2), DomainError);
  Meter m2;
  EXPECT_THROW(bfs_randomized(GraphStream::insertion_only(4, {{0, 1}, {2, 3}}), m2, 0, 4), RetryableFailure);
}

TEST(Diameter, Fixtures) {
  Meter m;
  const Dist dp = diameter_approx(make_stream(gen::path(40), StreamModel::InsertionOnly, 2), m, 10, {.seed = 2});
  EXPECT_GE(dp, 2u * 39 / 3);
  EXPECT_LE(dp, 39u);
  Meter m2;
  EXPECT_EQ(diameter_approx(make_stream(gen::star(30), StreamModel::InsertionOnly, 2), m2, 5, {.seed = 2}), 2u);
}

TEST(Diameter, RandomGraphsWithinBound) {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto rng = make_rng(seed, "diam");
    const std::size_t n = 20 + uniform_int(rng, 0, 100);
    const auto el = gen::gnp(n, 2.5 / static_cast<double>(n), seed);
    const Dist D = oracle::exact_diameter(graph_of(el));
    Meter m;
    try {
      const Dist est = diameter_approx(make_stream(el, StreamModel::InsertionOnly, seed), m, sqrt_log_k(n),
                                       {.seed = seed});
      EXPECT_LE(est, D);
      EXPECT_GE(est, 2 * D / 3) << "seed " << seed;
      ++ok;
    } catch (const RetryableFailure&) {
    }
  }
  EXPECT_GE(ok, 23);
}

TEST(Steiner, Fixtures) {
  const auto el = gen::cycle(10);
  Meter m;
  const auto two = steiner_2approx(make_stream(el, StreamModel::InsertionOnly, 1), m, {0, 3}, 2);
  EXPECT_EQ(two.cost(), 3u);
  std::vector<NodeId> all(10);
  for (NodeId v = 0; v < 10; ++v) all[v] = v;
  Meter m2;
  const auto span = steiner_2approx(make_stream(el, StreamModel::InsertionOnly, 1), m2, all, 10);
  EXPECT_EQ(span.cost(), 9u);
}

TEST(Steiner, WithinTwiceOptimum) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto rng = make_rng(seed, "steiner");
    const std::size_t n = 8 + uniform_int(rng, 0, 17);
    const auto el = gen::gnp(n, 0.2, seed);
    const auto g = graph_of(el);
    std::set<NodeId> pick;
    const std::size_t c = 2 + uniform_int(rng, 0, 4);
    while (pick.size() < c) pick.insert(static_cast<NodeId>(uniform_int(rng, 0, n - 1)));
    const std::vector<NodeId> S(pick.begin(), pick.end());
    Meter m;
    const auto res = with_retries(seed, 3, [&](std::uint64_t sd) {
      return steiner_2approx(make_stream(el, StreamModel::InsertionOnly, seed), m, S, std::max<std::size_t>(c, n / 3),
                             {.seed = sd});
    });
    // A tree: connected over its nodes with |E| = |V| - 1, and all terminals in it.
    std::set<NodeId> nodes(S.begin(), S.end());
    UnionFind uf(n);
    for (const Edge& e : res.edges) {
      EXPECT_TRUE(g.has_edge(e.u, e.v));
      nodes.insert(e.u);
      nodes.insert(e.v);
      EXPECT_TRUE(uf.unite(e.u, e.v));
    }
    EXPECT_EQ(res.edges.size() + 1, nodes.size());
    EXPECT_LE(res.cost(), 2 * oracle::steiner_opt(g, S));
  }
}
