#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <vector>

#include "semistream/harness/generators.hpp"
#include "semistream/oracle/cache.hpp"
#include "semistream/oracle/connectivity.hpp"
#include "semistream/oracle/cut.hpp"
#include "semistream/oracle/dfs_check.hpp"
#include "semistream/oracle/distances.hpp"
#include "semistream/oracle/leaf.hpp"
#include "semistream/oracle/maximality.hpp"
#include "semistream/oracle/steiner.hpp"

using namespace semistream;

namespace {

AdjacencyGraph graph_of(const EdgeList& el) { return AdjacencyGraph::from_edges(el.n, el.edges); }

EdgeList connected_gnp(std::size_t n, double p, std::uint64_t seed) {
  for (;; ++seed) {
    EdgeList el = gen::gnp(n, p, seed);
    if (oracle::is_connected(graph_of(el))) return el;
  }
}

bool connected_without(const AdjacencyGraph& g, std::uint32_t removed, NodeId u, NodeId v, Edge skip) {
  std::vector<bool> seen(g.num_nodes(), false);
  std::vector<NodeId> stack{u};
  seen[u] = true;
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : g.neighbors(x)) {
      if (seen[y] || (removed >> y & 1u) || Edge(x, y) == skip) continue;
      seen[y] = true;
      stack.push_back(y);
    }
  }
  return seen[v];
}

// Menger by enumeration: smallest node set separating u from v (with the
// direct edge, if any, counted as one extra path).
int brute_node_connectivity(const AdjacencyGraph& g, NodeId u, NodeId v) {
  const auto n = static_cast<std::uint32_t>(g.num_nodes());
  const bool adjacent = g.has_edge(u, v);
  const Edge skip = adjacent ? Edge(u, v) : Edge(kNoNode - 1, kNoNode);
  int best = static_cast<int>(n);
  for (std::uint32_t S = 0; S < (1u << n); ++S) {
    if ((S >> u & 1u) || (S >> v & 1u)) continue;
    const int size = __builtin_popcount(S);
    if (size < best && !connected_without(g, S, u, v, skip)) best = size;
  }
  return best + (adjacent ? 1 : 0);
}

int brute_edge_connectivity(const AdjacencyGraph& g, NodeId u, NodeId v) {
  const auto n = static_cast<std::uint32_t>(g.num_nodes());
  int best = static_cast<int>(g.num_edges());
  for (std::uint32_t S = 0; S < (1u << n); ++S) {
    if (!(S >> u & 1u) || (S >> v & 1u)) continue;
    int cut = 0;
    for (const Edge& e : g.edges()) cut += ((S >> e.u) & 1u) != ((S >> e.v) & 1u);
    best = std::min(best, cut);
  }
  return best;
}

// Recursive lowest-id DFS, as parents.
RootedTree recursive_dfs(const AdjacencyGraph& g, NodeId root) {
  std::vector<NodeId> parent(g.num_nodes(), kNoNode);
  std::vector<bool> seen(g.num_nodes(), false);
  std::function<void(NodeId)> go = [&](NodeId x) {
    seen[x] = true;
    std::vector<NodeId> nb(g.neighbors(x).begin(), g.neighbors(x).end());
    std::sort(nb.begin(), nb.end());
    for (NodeId y : nb) {
      if (seen[y]) continue;
      parent[y] = x;
      go(y);
    }
  };
  go(root);
  return RootedTree::from_parents(root, std::move(parent));
}

}  // namespace

// ------------------------------------------------------------- exact_leaf

TEST(ExactLeaf, ClosedForms) {
  for (std::size_t n : {3, 5, 9, 14}) {
    EXPECT_EQ(oracle::exact_leaf(graph_of(gen::star(n))), n - 1);
    EXPECT_EQ(oracle::exact_leaf(graph_of(gen::cycle(n))), 2u);
    EXPECT_EQ(oracle::exact_leaf(graph_of(gen::path(n))), 2u);
    EXPECT_EQ(oracle::exact_leaf(graph_of(gen::complete(n))), n - 1);
  }
  EXPECT_EQ(oracle::exact_leaf(graph_of(gen::path(1))), 0u);
  EXPECT_EQ(oracle::exact_leaf(graph_of(gen::path(2))), 2u);
}

TEST(ExactLeaf, Petersen) { EXPECT_EQ(oracle::exact_leaf(graph_of(gen::petersen())), 6u); }

TEST(ExactLeaf, AgreesWithSpanningTreeEnumeration) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const EdgeList el = connected_gnp(5 + seed % 5, 0.45, 10 * seed);
    const AdjacencyGraph g = graph_of(el);
    EXPECT_EQ(oracle::exact_leaf(g), oracle::max_leaf_by_enumeration(g)) << "seed " << seed;
  }
}

TEST(ExactLeaf, BudgetAndDomain) {
  EXPECT_THROW(oracle::exact_leaf(graph_of(gen::path(21))), OracleBudgetExceeded);
  oracle::OracleBudget wide;
  wide.max_cds_nodes = 30;
  EXPECT_EQ(oracle::exact_leaf(graph_of(gen::path(21)), wide), 2u);
  EdgeList split{4, {Edge(0, 1), Edge(2, 3)}};
  EXPECT_THROW(oracle::exact_leaf(graph_of(split)), DomainError);
  EXPECT_THROW(oracle::max_leaf_by_enumeration(graph_of(gen::path(10))), OracleBudgetExceeded);
}

TEST(ExactLeaf, IndexGadgetGap) {
  oracle::OracleBudget wide;
  wide.max_cds_nodes = 40;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t k = 0; k + n <= 4; ++k) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto one = oracle::exact_leaf(graph_of(gen::index_hard(n, k, true, seed)), wide);
        const auto zero = oracle::exact_leaf(graph_of(gen::index_hard(n, k, false, seed)), wide);
        EXPECT_EQ(one, (2 * n + 1) * (k + 1)) << "n=" << n << " k=" << k;
        EXPECT_EQ(zero, 2 * n * (k + 1)) << "n=" << n << " k=" << k;
      }
    }
  }
}

// -------------------------------------------------------------- distances

TEST(Distances, ClosedForms) {
  const auto p = oracle::bfs_distances(graph_of(gen::path(7)), 0);
  for (NodeId v = 0; v < 7; ++v) EXPECT_EQ(p[v], v);
  const auto s = oracle::bfs_distances(graph_of(gen::star(6)), 3);
  EXPECT_EQ(s[0], 1u);
  EXPECT_EQ(s[3], 0u);
  EXPECT_EQ(s[5], 2u);
  EdgeList split{3, {Edge(0, 1)}};
  EXPECT_EQ(oracle::bfs_distances(graph_of(split), 0)[2], kInfDist);
}

TEST(Distances, BfsMatchesFloydWarshall) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const AdjacencyGraph g = graph_of(gen::gnp(40, 0.07, seed));
    const auto fw = oracle::floyd_warshall(g);
    std::vector<NodeId> all(40);
    for (NodeId v = 0; v < 40; ++v) all[v] = v;
    const auto t = oracle::exact_distances(g, all);
    for (NodeId a = 0; a < 40; ++a) {
      for (NodeId b = 0; b < 40; ++b) EXPECT_EQ(t.dist[a][b], fw[a][b]);
    }
  }
}

TEST(Distances, ComponentsAndDiameter) {
  EdgeList el{7, {Edge(0, 1), Edge(1, 2), Edge(3, 4)}};
  const AdjacencyGraph g = graph_of(el);
  auto sizes = oracle::component_sizes(g, std::vector<bool>(7, true));
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 1, 2, 3}));
  std::vector<bool> keep(7, true);
  keep[1] = false;
  EXPECT_EQ(oracle::component_sizes(g, keep).size(), 5u);
  EXPECT_FALSE(oracle::is_connected(g));
  EXPECT_EQ(oracle::exact_diameter(graph_of(gen::cycle(9))), 4u);
  EXPECT_EQ(oracle::exact_diameter(graph_of(gen::petersen())), 2u);
}

// ----------------------------------------------------------- connectivity

TEST(Connectivity, ClosedForms) {
  const AdjacencyGraph k4 = graph_of(gen::complete(4));
  for (NodeId a = 0; a < 4; ++a) {
    for (NodeId b = a + 1; b < 4; ++b) {
      EXPECT_EQ(oracle::node_connectivity(k4, a, b), 3);
      EXPECT_EQ(oracle::edge_connectivity(k4, a, b), 3);
    }
  }
  const AdjacencyGraph p = graph_of(gen::path(6));
  EXPECT_EQ(oracle::node_connectivity(p, 0, 5), 1);
  EXPECT_EQ(oracle::edge_connectivity(p, 0, 5), 1);
  EXPECT_EQ(oracle::node_connectivity(graph_of(gen::cycle(8)), 0, 4), 2);
}

TEST(Connectivity, MatchesSeparatorEnumeration) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 6 + seed % 7;
    const AdjacencyGraph g = graph_of(gen::gnp(n, 0.4, 77 + seed));
    for (NodeId a = 0; a < n; a += 2) {
      for (NodeId b = a + 1; b < n; b += 3) {
        EXPECT_EQ(oracle::node_connectivity(g, a, b), brute_node_connectivity(g, a, b)) << seed;
        EXPECT_EQ(oracle::edge_connectivity(g, a, b), brute_edge_connectivity(g, a, b)) << seed;
      }
    }
  }
}

TEST(SmallMaxFlow, LimitStopsEarly) {
  oracle::SmallMaxFlow f(4);
  f.add_arc(0, 1, 5);
  f.add_arc(0, 2, 5);
  f.add_arc(1, 3, 5);
  f.add_arc(2, 3, 5);
  EXPECT_EQ(f.run(0, 3, 3), 3);
  oracle::SmallMaxFlow g(3);
  g.add_arc(0, 1, 2);
  g.add_arc(1, 2, 1);
  EXPECT_EQ(g.run(0, 2), 1);
}

// ------------------------------------------------------------- DFS check

TEST(DfsCheck, Examples) {
  const AdjacencyGraph p = graph_of(gen::path(6));
  EXPECT_TRUE(oracle::is_dfs_tree(p, RootedTree::from_edges(6, 0, gen::path(6).edges)));
  EXPECT_TRUE(oracle::is_dfs_tree(p, RootedTree::from_edges(6, 3, gen::path(6).edges)));
  // BFS tree of C4 from 0: 0-1, 0-3, 1-2 leaves 2-3 as a cross edge.
  const AdjacencyGraph c4 = graph_of(gen::cycle(4));
  const RootedTree bfs = RootedTree::from_parents(0, {kNoNode, 0, 1, 0});
  EXPECT_FALSE(oracle::is_dfs_tree(c4, bfs));
  const RootedTree dfs = RootedTree::from_parents(0, {kNoNode, 0, 1, 2});
  EXPECT_TRUE(oracle::is_dfs_tree(c4, dfs));
  // A tree edge missing from G.
  EXPECT_FALSE(oracle::is_dfs_tree(p, RootedTree::from_parents(0, {kNoNode, 0, 1, 2, 3, 0})));
}

TEST(DfsCheck, RecursiveDfsAlwaysPasses) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const EdgeList el = connected_gnp(30, 0.15, 40 * seed);
    const AdjacencyGraph g = graph_of(el);
    const NodeId root = static_cast<NodeId>(seed % 30);
    EXPECT_TRUE(oracle::is_dfs_tree(g, recursive_dfs(g, root)));
    std::vector<NodeId> bp(30, kNoNode);
    std::vector<bool> seen(30, false);
    std::vector<NodeId> q{root};
    seen[root] = true;
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (NodeId y : g.neighbors(q[i])) {
        if (!seen[y]) {
          seen[y] = true;
          bp[y] = q[i];
          q.push_back(y);
        }
      }
    }
    // A BFS tree with an edge inside one layer is never a DFS tree.
    const RootedTree bfs = RootedTree::from_parents(root, bp);
    const auto d = oracle::bfs_distances(g, root);
    const bool flat_edge = std::ranges::any_of(g.edges(), [&](const Edge& e) { return d[e.u] == d[e.v]; });
    if (flat_edge) {
      EXPECT_FALSE(oracle::is_dfs_tree(g, bfs));
    }
  }
}

// ---------------------------------------------------------------- Steiner

TEST(Steiner, ClosedForms) {
  const AdjacencyGraph g = graph_of(gen::cycle(10));
  EXPECT_EQ(oracle::steiner_opt(g, {2, 6}), 4u);
  EXPECT_EQ(oracle::steiner_opt(g, {3}), 0u);
  std::vector<NodeId> all(8);
  for (NodeId v = 0; v < 8; ++v) all[v] = v;
  EXPECT_EQ(oracle::steiner_opt(graph_of(gen::path(8)), all), 7u);
  EXPECT_EQ(oracle::steiner_opt(graph_of(gen::star(9)), {1, 2, 3, 4}), 4u);
}

TEST(Steiner, MatchesSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 6 + seed % 9;
    const AdjacencyGraph g = graph_of(connected_gnp(n, 0.3, 900 + seed));
    std::vector<NodeId> terms;
    for (NodeId v = static_cast<NodeId>(seed % 3); v < n; v += 2 + static_cast<NodeId>(seed % 3)) terms.push_back(v);
    if (terms.size() > 8) terms.resize(8);
    EXPECT_EQ(oracle::steiner_opt(g, terms), oracle::steiner_opt_by_enumeration(g, terms)) << seed;
  }
}

TEST(Steiner, Errors) {
  std::vector<NodeId> nine{0, 1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_THROW(oracle::steiner_opt(graph_of(gen::path(10)), nine), OracleBudgetExceeded);
  EdgeList split{4, {Edge(0, 1), Edge(2, 3)}};
  EXPECT_THROW(oracle::steiner_opt(graph_of(split), {0, 3}), DomainError);
}

// ------------------------------------------------------------- maximality

TEST(MaximalityCheck, Examples) {
  // 0-1-2 with sink 4 across a gap, 3-4 elsewhere.
  const AdjacencyGraph g = graph_of(EdgeList{5, {Edge(0, 1), Edge(1, 2), Edge(3, 4)}});
  const oracle::PathsInstanceView unreachable{{{0}}, {kNoNode, kNoNode, kNoNode, kNoNode, 4}};
  EXPECT_TRUE(oracle::maximality_check(g, unreachable, {}).ok);
  EXPECT_TRUE(oracle::check_paths_form(g, unreachable, {}).ok);

  // Source 0 on path 0-1-2-3 with sink 3: empty output is not maximal,
  // the full route is.
  const AdjacencyGraph line = graph_of(gen::path(4));
  const oracle::PathsInstanceView inst{{{0}}, {kNoNode, kNoNode, kNoNode, 3}};
  EXPECT_FALSE(oracle::maximality_check(line, inst, {}).ok);
  const std::vector<std::vector<NodeId>> full{{0, 1, 2, 3}};
  EXPECT_TRUE(oracle::check_paths_form(line, inst, full).ok);
  EXPECT_TRUE(oracle::maximality_check(line, inst, full).ok);
  // Not ending at a sink.
  EXPECT_FALSE(oracle::check_paths_form(line, inst, {{0, 1, 2}}).ok);
  // Skipping a node.
  EXPECT_FALSE(oracle::check_paths_form(line, inst, {{0, 2, 3}}).ok);
}

TEST(MaximalityCheck, TruncatedOutputFails) {
  // Two sources share a sink group of two sinks; one route is reported.
  const AdjacencyGraph g = graph_of(EdgeList{6, {Edge(0, 1), Edge(1, 4), Edge(2, 3), Edge(3, 5)}});
  const oracle::PathsInstanceView inst{{{0}, {2}}, {kNoNode, kNoNode, kNoNode, kNoNode, 4, 5}};
  EXPECT_FALSE(oracle::maximality_check(g, inst, {{0, 1, 4}}).ok);
  EXPECT_TRUE(oracle::maximality_check(g, inst, {{0, 1, 4}, {2, 3, 5}}).ok);
  // One contracted sink can be used only once.
  const oracle::PathsInstanceView shared{{{0}, {2}}, {kNoNode, kNoNode, kNoNode, kNoNode, 4, 4}};
  EXPECT_FALSE(oracle::check_paths_form(g, shared, {{0, 1, 4}, {2, 3, 5}}).ok);
  EXPECT_TRUE(oracle::maximality_check(g, shared, {{0, 1, 4}}).ok);
}

// --------------------------------------------------------------------- cut

TEST(ConnectedMaxCut, SmallGraphs) {
  EXPECT_EQ(oracle::connected_max_cut_exact(graph_of(gen::complete(4))), 4u);
  EXPECT_EQ(oracle::connected_max_cut_exact(graph_of(gen::cycle(4))), 2u);
  EXPECT_EQ(oracle::connected_max_cut_exact(graph_of(gen::path(2))), 1u);
  EXPECT_EQ(oracle::connected_max_cut_exact(graph_of(gen::star(7))), 6u);
  EXPECT_THROW(oracle::connected_max_cut_exact(graph_of(gen::path(17))), OracleBudgetExceeded);
}

TEST(ConnectedMaxCut, CutSizeHelper) {
  const AdjacencyGraph g = graph_of(gen::cycle(6));
  EXPECT_EQ(oracle::cut_size(g, {true, true, true, false, false, false}), 2u);
  EXPECT_EQ(oracle::cut_size(g, {true, false, true, false, true, false}), 6u);
}

// ------------------------------------------------------------------- cache

TEST(OracleCache, RoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "semistream_oracle_cache_test.json";
  std::filesystem::remove(path);
  {
    oracle::OracleCache c(path.string());
    int calls = 0;
    const auto key = oracle::OracleCache::key("petersen", 0, "leaf");
    EXPECT_EQ(c.get_or(key, [&] { ++calls; return std::int64_t{6}; }), 6);
    EXPECT_EQ(c.get_or(key, [&] { ++calls; return std::int64_t{7}; }), 6);
    EXPECT_EQ(calls, 1);
    c.save();
  }
  oracle::OracleCache again(path.string());
  EXPECT_EQ(again.get(oracle::OracleCache::key("petersen", 0, "leaf")), std::optional<std::int64_t>(6));
  EXPECT_FALSE(again.get("missing").has_value());
  std::filesystem::remove(path);
}
