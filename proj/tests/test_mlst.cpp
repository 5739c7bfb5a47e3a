#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "semistream/harness/generators.hpp"
#include "semistream/mlst/approx.hpp"
#include "semistream/mlst/dead_leaf.hpp"
#include "semistream/mlst/max_cut.hpp"
#include "semistream/mlst/sparsifier.hpp"
#include "semistream/oracle/cut.hpp"
#include "semistream/oracle/distances.hpp"
#include "semistream/oracle/leaf.hpp"

using namespace semistream;

namespace {

AdjacencyGraph graph_of(const EdgeList& el) { return AdjacencyGraph::from_edges(el.n, el.edges); }

std::size_t ceil_tenth(std::size_t x) { return (x + 9) / 10; }

}  // namespace

TEST(Inodes, ClosedForms) {
  EXPECT_EQ(count_inodes(graph_of(gen::cycle(8))), 8u);
  EXPECT_EQ(count_inodes(graph_of(gen::path(5))), 1u);
  EXPECT_EQ(count_inodes(graph_of(gen::complete(4))), 0u);
}

TEST(DeadLeafTree, Fixtures) {
  const auto star = dead_leaf_tree(graph_of(gen::star(6)), 0);
  EXPECT_EQ(star.leaf_count(), 5u);
  EXPECT_EQ(dead_leaf_tree(graph_of(gen::cycle(8)), 0).leaf_count(), 2u);
  const auto pg = graph_of(gen::petersen());
  const auto pt = dead_leaf_tree(pg, 0);
  EXPECT_TRUE(pt.is_spanning_tree_of(pg));
  EXPECT_GE(pt.leaf_count(), 1u);
  EXPECT_LE(pt.leaf_count(), oracle::exact_leaf(pg));
}

TEST(DeadLeafTree, SingletonIsRejected) {
  EXPECT_THROW(dead_leaf_tree(AdjacencyGraph(1), 0), DomainError);
}

TEST(DeadLeafTree, BoundOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto rng = make_rng(seed, "deadleaf");
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 60));
    const double p = std::vector<double>{0.02, 0.05, 0.1, 0.3}[seed % 4];
    const auto g = graph_of(gen::gnp(n, p, seed));
    DeadLeafStats stats;
    const auto t = dead_leaf_tree(g, static_cast<NodeId>(seed % n), {.check_invariant = true, .stats = &stats});
    ASSERT_TRUE(t.is_spanning_tree_of(g));
    EXPECT_GE(t.leaf_count(), ceil_tenth(n - count_inodes(g))) << "seed " << seed;
  }
}

TEST(Sparsifier, KFollowsLossFormula) {
  for (double eps : {0.9, 0.5, 0.2}) {
    const auto k = sparsifier_k(eps);
    EXPECT_GE(k, 186u);
    auto loss = [](std::size_t k) { return 30.0 * (1.0 + std::log(k + 1.0)) / (k + 1.0); };
    EXPECT_LE(loss(k), eps);
    if (k > 186) {
      EXPECT_GT(loss(k - 1), eps);
    }
  }
  EXPECT_EQ(sparsifier_k(0.9), 211u);
  EXPECT_EQ(sparsifier_k(1.5), 186u);
  EXPECT_THROW(sparsifier_k(0), DomainError);
}

TEST(Sparsifier, SmallDegreeKeepsWholeGraph) {
  for (auto model : {StreamModel::InsertionOnly, StreamModel::Turnstile}) {
    const auto el = gen::gnp(12, 0.4, 2);
    Meter m;
    const auto sp = build_sparsifier(make_stream(el, model, 2), m, 0.9, {.seed = 5});
    EXPECT_EQ(sp.edges, el.edges);
    EXPECT_EQ(m.passes(), 1u);
    EXPECT_TRUE(sp.guarantee);
  }
}

TEST(Sparsifier, ForcedSmallKOnDenseGraph) {
  for (auto model : {StreamModel::InsertionOnly, StreamModel::Turnstile}) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto el = gen::gnp(14, 0.4, seed);
      const auto g = graph_of(el);
      Meter m;
      const auto sp = build_sparsifier(make_stream(el, model, seed), m, 0.9, {.seed = seed, .forced_k = 3});
      EXPECT_FALSE(sp.guarantee);
      const auto h = AdjacencyGraph::from_edges(el.n, sp.edges);
      EXPECT_TRUE(oracle::is_connected(h));
      EXPECT_LE(sp.edges.size(), 4 * el.n);
      EXPECT_TRUE(sp.tree_backbone.is_spanning_tree_of(g));
      for (const Edge& e : sp.edges) EXPECT_TRUE(g.has_edge(e.u, e.v));
      EXPECT_LE(oracle::exact_leaf(h), oracle::exact_leaf(g));
      for (NodeId v = 0; v < el.n; ++v) EXPECT_EQ(sp.degrees[v], g.degree(v));
    }
  }
}

TEST(Sparsifier, DisconnectedInputIsDomainError) {
  Meter m;
  const auto s = GraphStream::insertion_only(4, {Edge(0, 1), Edge(2, 3)});
  EXPECT_THROW(build_sparsifier(s, m, 0.9), DomainError);
}

TEST(ApproxMlst, StarAndPath) {
  Meter m;
  EXPECT_EQ(approx_mlst(make_stream(gen::star(9), StreamModel::InsertionOnly, 1), m, 0.9).tree.leaf_count(), 8u);
  EXPECT_EQ(approx_mlst(make_stream(gen::path(9), StreamModel::Turnstile, 1), m, 0.9).tree.leaf_count(), 2u);
}

TEST(ApproxMlst, FactorTwoAgainstExactLeaf) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto rng = make_rng(seed, "mlst");
    const auto n = static_cast<std::size_t>(uniform_int(rng, 4, 14));
    const auto el = gen::gnp(n, seed % 2 ? 0.25 : 0.45, seed);
    const auto g = graph_of(el);
    Meter m;
    const auto r = approx_mlst(make_stream(el, seed % 3 ? StreamModel::InsertionOnly : StreamModel::Turnstile, seed), m,
                               0.9, {.seed = seed});
    ASSERT_TRUE(r.tree.is_spanning_tree_of(g));
    EXPECT_GE(2 * r.tree.leaf_count(), oracle::exact_leaf(g)) << "seed " << seed;
  }
}

TEST(ConnectedMaxCut, CycleSixUsesTreeLeaves) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Meter m;
    const auto el = gen::cycle(6);
    const auto g = graph_of(el);
    const auto r = connected_max_cut(make_stream(el, StreamModel::InsertionOnly, seed), m, 0.9, seed);
    const auto leaves = r.witness.leaves();
    EXPECT_EQ(leaves.size(), 2u);
    for (NodeId v : r.left) EXPECT_TRUE(std::find(leaves.begin(), leaves.end(), v) != leaves.end());
    std::vector<bool> keep(6, false);
    for (NodeId v : r.right) keep[v] = true;
    EXPECT_EQ(oracle::component_sizes(g, keep).size(), 1u);
  }
}

TEST(ConnectedMaxCut, CompleteFourPositive) {
  std::size_t best = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Meter m;
    const auto r = connected_max_cut(make_stream(gen::complete(4), StreamModel::Turnstile, seed), m, 0.9, seed);
    best = std::max(best, r.cut_value);
  }
  EXPECT_GT(best, 0u);
}

TEST(ConnectedMaxCut, IrregularInputRejected) {
  Meter m;
  EXPECT_THROW(connected_max_cut(make_stream(gen::path(5), StreamModel::InsertionOnly, 1), m, 0.9, 1), DomainError);
}

TEST(ConnectedMaxCut, FourRegularBestOfSamples) {
  for (std::uint64_t gseed = 0; gseed < 3; ++gseed) {
    const auto el = gen::random_regular(12, 4, gseed);
    const auto g = graph_of(el);
    const auto opt = oracle::connected_max_cut_exact(g);
    std::size_t best = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Meter m;
      const auto r = connected_max_cut(make_stream(el, StreamModel::InsertionOnly, gseed), m, 0.9, seed);
      std::vector<bool> side(12, false);
      for (NodeId v : r.left) side[v] = true;
      EXPECT_EQ(r.cut_value, oracle::cut_size(g, side));
      std::vector<bool> keep(12, false);
      for (NodeId v : r.right) keep[v] = true;
      ASSERT_EQ(oracle::component_sizes(g, keep).size(), 1u);
      best = std::max(best, r.cut_value);
    }
    EXPECT_GE(8.5 * static_cast<double>(best), static_cast<double>(opt));
  }
}
