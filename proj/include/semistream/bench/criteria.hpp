#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "semistream/bfs/deterministic.hpp"
#include "semistream/bfs/diameter.hpp"
#include "semistream/bfs/local_wave.hpp"
#include "semistream/bfs/randomized.hpp"
#include "semistream/bfs/steiner.hpp"
#include "semistream/cert/certificate.hpp"
#include "semistream/dfs/dfs_aa.hpp"
#include "semistream/dfs/dfs_simple.hpp"
#include "semistream/dfs/maximal_paths.hpp"
#include "semistream/harness/generators.hpp"
#include "semistream/mlst/approx.hpp"
#include "semistream/mlst/dead_leaf.hpp"
#include "semistream/mlst/max_cut.hpp"
#include "semistream/oracle/connectivity.hpp"
#include "semistream/oracle/cut.hpp"
#include "semistream/oracle/dfs_check.hpp"
#include "semistream/oracle/distances.hpp"
#include "semistream/oracle/leaf.hpp"
#include "semistream/oracle/maximality.hpp"
#include "semistream/oracle/steiner.hpp"
#include "semistream/sketch/l0_sampler.hpp"

namespace semistream::bench {

/// One row of the acceptance table.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string measured;
  double seconds = 0;
};

struct Criterion {
  int id;
  std::string name;
  std::function<void(CriterionResult&)> body;
};

namespace detail {

inline AdjacencyGraph graph_of(const EdgeList& el) { return AdjacencyGraph::from_edges(el.n, el.edges); }

inline EdgeList connected_gnp(std::size_t n, double p, std::uint64_t seed) {
  for (std::uint64_t i = 0;; ++i) {
    EdgeList el = gen::gnp(n, p, derive_seed(seed, "bench.gnp", i));
    if (oracle::is_connected(graph_of(el))) return el;
  }
}

// Random connected graph with n in [lo, hi] and a density drawn from a
// few regimes (sparse near the connectivity threshold up to dense).
inline EdgeList mixed_graph(std::size_t lo, std::size_t hi, std::uint64_t seed) {
  auto rng = make_rng(seed, "bench.mixed");
  const auto n = static_cast<std::size_t>(uniform_int(rng, lo, hi));
  const double base = std::log(static_cast<double>(std::max<std::size_t>(n, 2))) / static_cast<double>(n);
  const double mult = std::vector<double>{1.2, 2.0, 4.0, 10.0}[uniform_int(rng, 0, 3)];
  return connected_gnp(n, std::min(1.0, mult * base), seed);
}

inline std::size_t max_path_degree_sum(const AdjacencyGraph& g, const RootedTree& t) {
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

inline std::size_t sqrt_log_k(std::size_t n) {
  const auto r = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const auto l = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n))));
  return std::min(n, r * l);
}

inline std::size_t ceil_log2(std::size_t n) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

template <typename... T>
std::string fmt(const T&... parts) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  (os << ... << parts);
  return os.str();
}

inline bool bfs_matches(const AdjacencyGraph& g, const BfsResult& r) {
  return r.dist == oracle::bfs_distances(g, r.source) && oracle::is_bfs_tree(g, r.tree);
}

// LCA-depth check on one dfs_simple level: no edge inside the subproblem
// joins two nodes that are not ancestor-related below the top k layers.
inline std::size_t layer_violations(const AdjacencyGraph& g, const DfsLevelView& v, std::size_t k) {
  std::vector<NodeId> loc(g.num_nodes(), kNoNode);
  for (NodeId i = 0; i < v.nodes.size(); ++i) loc[v.nodes[i]] = i;
  auto lca = [&](NodeId a, NodeId b) {
    while (v.depth[loc[a]] > v.depth[loc[b]]) a = v.parent[loc[a]];
    while (v.depth[loc[b]] > v.depth[loc[a]]) b = v.parent[loc[b]];
    while (a != b) {
      a = v.parent[loc[a]];
      b = v.parent[loc[b]];
    }
    return a;
  };
  std::size_t bad = 0;
  for (NodeId a : v.nodes) {
    for (NodeId b : g.neighbors(a)) {
      if (loc[b] == kNoNode || b < a) continue;
      const NodeId w = lca(a, b);
      if (w != a && w != b && v.depth[loc[w]] < k) ++bad;
    }
  }
  return bad;
}

// MaximalPaths instance from self-avoiding random walks.
inline MaximalPathsInstance random_paths_instance(const AdjacencyGraph& g, std::uint64_t seed, std::size_t paths,
                                                  std::size_t groups) {
  auto rng = make_rng(seed, "bench.instance");
  const std::size_t n = g.num_nodes();
  std::vector<bool> used(n, false);
  MaximalPathsInstance inst;
  inst.sink_group.assign(n, kNoNode);
  auto walk = [&](std::size_t max_len) {
    Path p;
    NodeId v = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
    for (int tries = 0; used[v] && tries < 8; ++tries) v = static_cast<NodeId>(uniform_int(rng, 0, n - 1));
    if (used[v]) return p;
    p.push_back(v);
    used[v] = true;
    while (p.size() < max_len) {
      std::vector<NodeId> c;
      for (NodeId w : g.neighbors(p.back())) {
        if (!used[w]) c.push_back(w);
      }
      if (c.empty()) break;
      const NodeId w = c[uniform_int(rng, 0, c.size() - 1)];
      used[w] = true;
      p.push_back(w);
    }
    return p;
  };
  for (std::size_t i = 0; i < paths; ++i) {
    Path p = walk(1 + uniform_int(rng, 0, 6));
    if (!p.empty()) inst.paths.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < groups; ++i) {
    const Path p = walk(1 + uniform_int(rng, 0, 3));
    for (NodeId v : p) inst.sink_group[v] = p.front();
  }
  return inst;
}

// ---------------------------------------------------------------- 1..4

inline double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void dead_leaf_bound(CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<EdgeList> graphs;
  for (std::uint64_t seed = 0; seed < 500; ++seed) graphs.push_back(mixed_graph(2, 60, derive_seed(1, "c1", seed)));
  for (std::size_t n : {2, 5, 17, 60}) {
    graphs.push_back(gen::path(n));
    graphs.push_back(gen::star(n));
  }
  for (std::size_t n : {3, 8, 41}) graphs.push_back(gen::cycle(n));
  graphs.push_back(gen::petersen());
  std::size_t bad = 0;
  double worst = 1e9;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto g = graph_of(graphs[i]);
    const auto t = dead_leaf_tree(g, static_cast<NodeId>(i % g.num_nodes()));
    const double need = static_cast<double>(g.num_nodes() - count_inodes(g)) / 10.0;
    if (!t.is_spanning_tree_of(g) || static_cast<double>(t.leaf_count()) < need) ++bad;
    if (need > 0) worst = std::min(worst, static_cast<double>(t.leaf_count()) / need);
  }
  r.passed = bad == 0 && since(t0) < 10;
  r.measured = fmt(graphs.size(), " graphs, violations=", bad, ", min leaves/((n-inode)/10)=", worst);
}

inline void sparsifier_contract(CriterionResult& r) {
  std::size_t bad = 0, exact_checked = 0, leaf_bad = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto rng = make_rng(seed, "c2");
    const bool small = seed % 2 == 0;
    const EdgeList el = small ? mixed_graph(4, 14, derive_seed(2, "c2", seed)) : mixed_graph(15, 80, seed);
    const auto g = graph_of(el);
    const auto k = static_cast<std::size_t>(uniform_int(rng, 2, 8));
    const auto model = seed % 3 == 0 ? StreamModel::Turnstile : StreamModel::InsertionOnly;
    Meter m;
    const auto sp = build_sparsifier(make_stream(el, model, seed), m, 0.9, {.seed = seed, .forced_k = k});
    const auto h = AdjacencyGraph::from_edges(el.n, sp.edges);
    bool ok = oracle::is_connected(h) && sp.edges.size() <= (k + 1) * el.n;
    for (const Edge& e : sp.edges) ok = ok && g.has_edge(e.u, e.v);
    bad += !ok;
    std::size_t maxdeg = 0;
    for (NodeId v = 0; v < el.n; ++v) maxdeg = std::max(maxdeg, g.degree(v));
    if (maxdeg <= k && el.n <= 14) {
      ++exact_checked;
      leaf_bad += oracle::exact_leaf(h) != oracle::exact_leaf(g);
    }
  }
  r.passed = bad == 0 && leaf_bad == 0;
  r.measured = fmt("200 graphs, contract violations=", bad, ", leaf(H)=leaf(G) checked on ", exact_checked,
                   " bounded-degree graphs, mismatches=", leaf_bad);
}

inline void mlst_factor(CriterionResult& r) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t bad = 0;
  double worst = 1e9;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const EdgeList el = mixed_graph(4, 14, derive_seed(3, "c3", seed));
    const auto g = graph_of(el);
    Meter m;
    const auto model = seed % 3 == 0 ? StreamModel::Turnstile : StreamModel::InsertionOnly;
    const auto res = approx_mlst(make_stream(el, model, seed), m, 0.9, {.seed = seed});
    const auto opt = oracle::exact_leaf(g);
    if (!res.tree.is_spanning_tree_of(g) || 2 * res.tree.leaf_count() < opt) ++bad;
    if (opt > 0) worst = std::min(worst, static_cast<double>(res.tree.leaf_count()) / static_cast<double>(opt));
  }
  r.passed = bad == 0 && since(t0) < 60;
  r.measured = fmt("40 graphs, violations=", bad, ", min leaf/OPT=", worst);
}

inline void index_gadget_gap(CriterionResult& r) {
  // The gadget has (k+1)(2n+2)+1 nodes, past the default cap; cut vertices
  // (hub and each copy's x_qi) are forced, which keeps the search small.
  oracle::OracleBudget wide;
  wide.max_cds_nodes = 100;
  std::size_t bad = 0, cases = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t k = 0; k <= 3; ++k) {
      for (std::uint64_t seed = 0; seed < 2; ++seed) {
        const auto one = oracle::exact_leaf(graph_of(gen::index_hard(n, k, true, seed)), wide);
        const auto zero = oracle::exact_leaf(graph_of(gen::index_hard(n, k, false, seed)), wide);
        ++cases;
        bad += one != (2 * n + 1) * (k + 1) || zero != 2 * n * (k + 1) || one - zero != k + 1;
      }
    }
  }
  r.passed = bad == 0;
  r.measured = fmt(cases, " (n,k,seed) pairs, gap violations=", bad);
}

// ---------------------------------------------------------------- 5..10

inline void bfs_exactness(CriterionResult& r) {
  std::size_t det_bad = 0, rand_ok = 0, rand_wrong = 0, rand_signaled = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const EdgeList el = mixed_graph(50, 500, derive_seed(5, "c5", seed));
    const auto g = graph_of(el);
    const auto s = make_stream(el, StreamModel::InsertionOnly, seed);
    const auto src = static_cast<NodeId>(seed % el.n);
    Meter m1;
    det_bad += !bfs_matches(g, bfs_deterministic(s, m1, src, 4 + seed % 12));
    Meter m2;
    try {
      const auto res = bfs_randomized(s, m2, src, sqrt_log_k(el.n), {.confidence = 3.0, .seed = seed});
      if (bfs_matches(g, res)) {
        ++rand_ok;
      } else {
        ++rand_wrong;
      }
    } catch (const RetryableFailure&) {
      ++rand_signaled;
    }
  }
  r.passed = det_bad == 0 && rand_wrong == 0 && rand_ok >= 98;
  r.measured = fmt("deterministic mismatches=", det_bad, ", randomized ok=", rand_ok, "/100, signaled=", rand_signaled,
                   ", silent wrong=", rand_wrong);
}

inline void degree_sum(CriterionResult& r) {
  std::size_t bad = 0, trees = 0;
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const EdgeList el = mixed_graph(30, 300, derive_seed(6, "c6", seed));
    const auto g = graph_of(el);
    const auto s = make_stream(el, StreamModel::InsertionOnly, seed);
    std::vector<RootedTree> out;
    Meter m1;
    out.push_back(bfs_deterministic(s, m1, 0, 6).tree);
    Meter m2;
    try {
      out.push_back(bfs_randomized(s, m2, 0, sqrt_log_k(el.n), {.seed = seed}).tree);
    } catch (const RetryableFailure&) {
    }
    for (const auto& t : out) {
      ++trees;
      const auto sum = max_path_degree_sum(g, t);
      bad += sum > 3 * el.n;
      worst = std::max(worst, static_cast<double>(sum) / static_cast<double>(el.n));
    }
  }
  const auto el = gen::layered_blocks(1000, 25);
  const auto g = graph_of(el);
  Meter m;
  const auto t = bfs_deterministic(make_stream(el, StreamModel::InsertionOnly, 6), m, 0, 10).tree;
  const auto witness = static_cast<double>(max_path_degree_sum(g, t)) / 1000.0;
  bad += witness > 3.0;
  r.passed = bad == 0 && witness >= 2.5;
  r.measured = fmt(trees + 1, " trees, violations of 3n=", bad, ", max ratio on random=", worst,
                   ", layered_blocks(1000,25) ratio=", witness);
}

inline void pass_bounds(CriterionResult& r) {
  // Randomized BFS: 2(2h-1) wave passes plus O(log n) for the parent pass
  // and the verification; the O(log n) term is taken as 2 ceil(log2 n).
  std::size_t rand_bad = 0, rand_runs = 0;
  double rand_ratio = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const EdgeList el = mixed_graph(100, 500, derive_seed(7, "c7r", seed));
    const std::size_t k = sqrt_log_k(el.n);
    Meter m;
    RandomizedBfsStats st;
    try {
      bfs_randomized(make_stream(el, StreamModel::InsertionOnly, seed), m, 0, k, {.seed = seed}, &st);
    } catch (const RetryableFailure&) {
      continue;
    }
    ++rand_runs;
    const auto h = static_cast<std::size_t>(std::ceil(3.0 * static_cast<double>(el.n) *
                                                      std::log(static_cast<double>(el.n)) / static_cast<double>(k)));
    const std::size_t bound = 2 * (2 * h - 1) + 2 * ceil_log2(el.n);
    rand_bad += m.passes() > bound;
    rand_ratio = std::max(rand_ratio, static_cast<double>(m.passes()) / static_cast<double>(bound));
  }
  // Deterministic BFS: passes <= 8p.
  std::size_t det_bad = 0;
  double det_c = 0;
  std::vector<EdgeList> fixtures{gen::path(200), gen::star(200), gen::cycle(201), gen::layered_blocks(1000, 25),
                                 gen::complete(40)};
  for (std::uint64_t seed = 0; seed < 10; ++seed) fixtures.push_back(mixed_graph(50, 400, derive_seed(7, "c7d", seed)));
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    for (std::size_t p : {1, 2, 5, 10, 40}) {
      Meter m;
      bfs_deterministic(make_stream(fixtures[i], StreamModel::InsertionOnly, i), m, 0, p);
      det_bad += m.passes() > 8 * p;
      det_c = std::max(det_c, static_cast<double>(m.passes()) / static_cast<double>(p));
    }
  }
  // dfs_simple: passes <= ceil(h/k) + 1.
  std::size_t dfs_bad = 0, dfs_runs = 0, dfs_turn_over = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const bool turn = seed % 5 == 4;
    const EdgeList el = mixed_graph(20, turn ? 50 : 120, derive_seed(7, "c7s", seed));
    const std::size_t k = 1 + seed % 6;
    Meter m;
    DfsSimpleStats st;
    const auto t = dfs_simple(make_stream(el, turn ? StreamModel::Turnstile : StreamModel::InsertionOnly, seed), m, 0,
                              k, {.seed = seed}, &st);
    ++dfs_runs;
    const std::size_t bound = (t.height() + k - 1) / k + 1;
    if (m.passes() > bound) {
      ++dfs_bad;
      if (turn && st.retries > 0) ++dfs_turn_over;
    }
  }
  r.passed = rand_bad == 0 && det_bad == 0 && dfs_bad == 0;
  r.measured = fmt("bfs_randomized: ", rand_runs, " runs, over bound=", rand_bad, ", max passes/bound=", rand_ratio,
                   "; bfs_deterministic: over 8p=", det_bad, ", max passes/p=", det_c, "; dfs_simple: ", dfs_runs,
                   " runs, over ceil(h/k)+1=", dfs_bad, " (turnstile with redo: ", dfs_turn_over, ")");
}

inline void congestion(CriterionResult& r) {
  const std::size_t n = 500;
  std::size_t sampled = 0, within = 0;
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto el = connected_gnp(n, 0.02, derive_seed(8, "c8", seed));
    const auto s = make_stream(el, StreamModel::InsertionOnly, seed);
    const auto k = sqrt_log_k(n);
    const Dist h = center_radius(n, k, 3.0);
    const auto centers = semistream::detail::sample_centers(n, k, {{0}}, seed);
    const auto tau = semistream::detail::start_times(centers.size(), h, seed, "bench.tau");
    std::vector<std::vector<std::uint32_t>> rows;
    Meter m;
    WaveOptions o;
    o.congestion = &rows;
    LocalBfsWave w(n, centers, tau, h, seed, o);
    w.run(s, m, [](std::size_t, NodeId, Dist) {});
    const double bound =
        6.0 * std::max(std::log(static_cast<double>(n)), static_cast<double>(centers.size()) / static_cast<double>(h));
    auto rng = make_rng(seed, "bench.c8.sample");
    for (int i = 0; i < 50 && !rows.empty(); ++i) {
      const auto& row = rows[uniform_int(rng, 0, rows.size() - 1)];
      const auto c = row[uniform_int(rng, 0, row.size() - 1)];
      ++sampled;
      within += c <= bound;
      worst = std::max(worst, static_cast<double>(c) / bound);
    }
  }
  r.passed = sampled == 1000 && within * 100 >= 99 * sampled;
  r.measured = fmt(within, "/", sampled, " sampled (node, pass) pairs within 6 max{ln n, |U|/h}, max count/bound=",
                   worst);
}

inline void diameter(CriterionResult& r) {
  std::size_t ok = 0, bad = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const EdgeList el = mixed_graph(20, 150, derive_seed(9, "c9", seed));
    const Dist D = oracle::exact_diameter(graph_of(el));
    Meter m;
    try {
      const Dist est =
          diameter_approx(make_stream(el, StreamModel::InsertionOnly, seed), m, sqrt_log_k(el.n), {.seed = seed});
      ++ok;
      bad += est > D || est < 2 * D / 3;
    } catch (const RetryableFailure&) {
    }
  }
  r.passed = bad == 0 && ok >= 95;
  r.measured = fmt("successful runs=", ok, "/100, out of [floor(2D/3), D]=", bad);
}

inline void steiner(CriterionResult& r) {
  std::size_t bad = 0;
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto rng = make_rng(seed, "c10");
    const EdgeList el = mixed_graph(8, 25, derive_seed(10, "c10", seed));
    const auto g = graph_of(el);
    std::set<NodeId> pick;
    const std::size_t c = std::min<std::size_t>(el.n, 2 + uniform_int(rng, 0, 4));
    while (pick.size() < c) pick.insert(static_cast<NodeId>(uniform_int(rng, 0, el.n - 1)));
    const std::vector<NodeId> S(pick.begin(), pick.end());
    Meter m;
    const auto res = with_retries(seed, 3, [&](std::uint64_t sd) {
      return steiner_2approx(make_stream(el, StreamModel::InsertionOnly, seed), m, S,
                             std::max<std::size_t>(c, el.n / 3), {.seed = sd});
    });
    std::set<NodeId> nodes(S.begin(), S.end());
    UnionFind uf(el.n);
    bool ok = true;
    for (const Edge& e : res.edges) {
      ok = ok && g.has_edge(e.u, e.v) && uf.unite(e.u, e.v);
      nodes.insert(e.u);
      nodes.insert(e.v);
    }
    ok = ok && res.edges.size() + 1 == nodes.size();
    const auto opt = oracle::steiner_opt(g, S);
    ok = ok && res.cost() <= 2 * opt;
    bad += !ok;
    if (opt > 0) worst = std::max(worst, static_cast<double>(res.cost()) / static_cast<double>(opt));
  }
  r.passed = bad == 0;
  r.measured = fmt("30 instances, violations=", bad, ", max cost/OPT=", worst);
}

// ---------------------------------------------------------------- 11..15

inline void dfs_validity(CriterionResult& r) {
  std::size_t simple_bad = 0, aa_bad = 0, layer_bad = 0, levels = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const bool turn = seed % 10 == 9;
    const EdgeList el = mixed_graph(10, turn ? 60 : 120, derive_seed(11, "c11", seed));
    const auto g = graph_of(el);
    const auto model = turn ? StreamModel::Turnstile : StreamModel::InsertionOnly;
    const auto root = static_cast<NodeId>(seed % el.n);
    const std::size_t k = 1 + seed % 7;
    DfsSimpleStats st;
    if (el.n <= 60) {
      st.observer = [&](const DfsLevelView& v) {
        ++levels;
        layer_bad += layer_violations(g, v, k);
      };
    }
    Meter m1;
    simple_bad += !oracle::is_dfs_tree(g, dfs_simple(make_stream(el, model, seed), m1, root, k, {.seed = seed}, &st));
    Meter m2;
    const std::size_t ak = 11, as = 3;
    aa_bad += !oracle::is_dfs_tree(g, dfs_aa(make_stream(el, model, seed), m2, root, ak, as, {.seed = seed}));
  }
  r.passed = simple_bad == 0 && aa_bad == 0 && layer_bad == 0;
  r.measured = fmt("100 graphs: dfs_simple invalid=", simple_bad, ", dfs_aa invalid=", aa_bad,
                   "; cross-subtree edges on ", levels, " dfs_simple levels=", layer_bad);
}

inline void maximal_paths_contract(CriterionResult& r) {
  std::size_t bad = 0, runs = 0;
  double worst = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    auto rng = make_rng(t, "c12");
    const auto n = static_cast<std::size_t>(uniform_int(rng, 20, 60));
    const EdgeList el = gen::gnp(n, 2.5 / static_cast<double>(n) + 0.02 * static_cast<double>(t % 3), t);
    const auto g = graph_of(el);
    const auto inst = random_paths_instance(g, t, 3 + t % 10, 2 + t % 5);
    const oracle::PathsInstanceView view{inst.paths, inst.sink_group};
    for (auto model : {StreamModel::InsertionOnly, StreamModel::Turnstile}) {
      for (std::size_t k : {1, 4}) {
        Meter m;
        MaximalPathsStats st;
        const auto out = maximal_paths(make_stream(el, model, t), m, inst, k, std::min<std::size_t>(k, 2), t, &st);
        ++runs;
        const bool ok = oracle::check_paths_form(g, view, out.paths).ok &&
                        oracle::maximality_check(g, view, out.paths).ok && st.stage1_iterations <= 2 * n / k;
        bad += !ok;
        worst = std::max(worst, static_cast<double>(st.stage1_iterations) * static_cast<double>(k) /
                                    (2.0 * static_cast<double>(n)));
      }
    }
  }
  r.passed = bad == 0;
  r.measured = fmt("20 instances x ", runs / 20, " settings, violations=", bad, ", max stage-1 iterations/(2n/k)=",
                   worst);
}

inline void certificates(CriterionResult& r) {
  std::size_t lambda_bad = 0, pairs = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const EdgeList el = mixed_graph(20, 40, derive_seed(13, "c13l", seed));
    const auto g = graph_of(el);
    for (unsigned s = 1; s <= 4; ++s) {
      Meter m;
      const auto c = vc_certificate_insertion(make_stream(el, StreamModel::InsertionOnly, seed), m, s);
      const auto k = AdjacencyGraph::from_edges(el.n, c.edges);
      for (NodeId u = 0; u < el.n; ++u) {
        for (NodeId v = u + 1; v < el.n; ++v) {
          ++pairs;
          lambda_bad += std::min<int>(static_cast<int>(s), oracle::edge_connectivity(g, u, v)) !=
                        std::min<int>(static_cast<int>(s), oracle::edge_connectivity(k, u, v));
        }
      }
    }
  }
  std::size_t runs = 0, good = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const EdgeList el = mixed_graph(20, 60, derive_seed(13, "c13k", seed));
    const auto g = graph_of(el);
    for (unsigned s = 2; s <= 3; ++s) {
      Meter m;
      const auto c = vc_certificate_turnstile(make_stream(el, StreamModel::Turnstile, seed), m, s,
                                              derive_seed(seed, "bench.cert", s));
      const auto k = AdjacencyGraph::from_edges_dedup(el.n, c.edges);
      auto rng = make_rng(seed, "bench.c13.pairs", s);
      bool ok = true;
      for (const Edge& e : c.edges) ok = ok && g.has_edge(e.u, e.v);
      for (int i = 0; i < 50 && ok; ++i) {
        const auto u = static_cast<NodeId>(uniform_int(rng, 0, el.n - 1));
        auto v = static_cast<NodeId>(uniform_int(rng, 0, el.n - 2));
        if (v >= u) ++v;
        ok = std::min<int>(static_cast<int>(s), oracle::node_connectivity(g, u, v)) <=
             oracle::node_connectivity(k, u, v);
      }
      ++runs;
      good += ok;
    }
  }
  r.passed = lambda_bad == 0 && good * 100 >= 98 * runs;
  r.measured = fmt("forest decomposition: ", pairs, " pairs, min(s,lambda) mismatches=", lambda_bad,
                   "; stacked sketch: ", good, "/", runs, " runs preserve min(s,kappa) on 50 pairs");
}

inline void sketch_statistics(CriterionResult& r) {
  // 99% chi-square quantiles for 1, 3, 7 and 15 degrees of freedom.
  const std::map<std::size_t, double> crit{{2, 6.635}, {4, 11.345}, {8, 18.475}, {16, 30.578}};
  bool uniform_ok = true;
  std::ostringstream chis;
  for (const auto& [size, limit] : crit) {
    std::vector<int> hits(size, 0);
    int found = 0;
    for (int q = 0; q < 10000; ++q) {
      L0Sketch a(4096, derive_seed(14, "bench.uniform", static_cast<std::uint64_t>(size) * 100000 + q));
      for (std::uint64_t x = 0; x < size; ++x) a.update(17 + 131 * x, +1);
      const auto res = a.query();
      if (!res.found()) continue;
      ++found;
      ++hits[(res.index - 17) / 131];
    }
    double chi = 0;
    const double expect = static_cast<double>(found) / static_cast<double>(size);
    for (int h : hits) chi += (h - expect) * (h - expect) / expect;
    uniform_ok = uniform_ok && chi < limit && found >= 9900;
    chis << " |S|=" << size << ":" << static_cast<int>(chi * 100) / 100.0;
  }
  std::size_t linear_bad = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    L0Sketch a(1000, seed), fresh(1000, seed);
    auto rng = make_rng(seed, "bench.linearity");
    std::vector<std::pair<std::uint64_t, int>> ops;
    const auto len = uniform_int(rng, 1, 60);
    for (std::uint64_t i = 0; i < len; ++i) ops.emplace_back(uniform_int(rng, 0, 999), bernoulli(rng, 0.5) ? 1 : -1);
    for (auto [x, d] : ops) a.update(x, d);
    std::shuffle(ops.begin(), ops.end(), rng);
    for (auto [x, d] : ops) a.update(x, -d);
    linear_bad += !(a == fresh);
  }
  r.passed = uniform_ok && linear_bad == 0;
  r.measured = fmt("chi-square", chis.str(), "; linearity mismatches=", linear_bad, "/1000");
}

inline void connected_max_cut(CriterionResult& r) {
  std::size_t conn_bad = 0, ratio_bad = 0, samples = 0;
  double worst = 1e9;
  for (std::uint64_t gseed = 0; gseed < 5; ++gseed) {
    const auto el = gen::random_regular(12, 4, gseed);
    const auto g = graph_of(el);
    const auto opt = oracle::connected_max_cut_exact(g);
    std::size_t best = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Meter m;
      const auto res = semistream::connected_max_cut(make_stream(el, StreamModel::InsertionOnly, gseed), m, 0.9, seed);
      std::vector<bool> keep(12, false);
      for (NodeId v : res.right) keep[v] = true;
      ++samples;
      conn_bad += res.right.empty() || oracle::component_sizes(g, keep).size() != 1;
      best = std::max(best, res.cut_value);
    }
    ratio_bad += 8.5 * static_cast<double>(best) < static_cast<double>(opt);
    worst = std::min(worst, static_cast<double>(best) / static_cast<double>(opt));
  }
  r.passed = conn_bad == 0 && ratio_bad == 0;
  r.measured = fmt("5 graphs x 200 samples, V\\L disconnected=", conn_bad, ", best/OPT min=", worst);
}

}  // namespace detail

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "dead-leaf tree leaf bound", detail::dead_leaf_bound},
      {2, "sparsifier contract", detail::sparsifier_contract},
      {3, "MLST factor 2", detail::mlst_factor},
      {4, "Index gadget leaf gap", detail::index_gadget_gap},
      {5, "BFS exactness", detail::bfs_exactness},
      {6, "BFS degree sum", detail::degree_sum},
      {7, "pass bounds", detail::pass_bounds},
      {8, "local BFS congestion", detail::congestion},
      {9, "diameter approximation", detail::diameter},
      {10, "Steiner factor 2", detail::steiner},
      {11, "DFS validity", detail::dfs_validity},
      {12, "MaximalPaths contract", detail::maximal_paths_contract},
      {13, "connectivity certificates", detail::certificates},
      {14, "l0 sampler statistics", detail::sketch_statistics},
      {15, "connected max cut", detail::connected_max_cut},
  };
  return all;
}

/// Runs one criterion; an exception fails the row with its message.
inline CriterionResult run_criterion(const Criterion& c) {
  CriterionResult r;
  r.id = c.id;
  r.name = c.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.measured = std::string("exception: ") + e.what();
  }
  r.seconds = detail::since(t0);
  return r;
}

inline std::string format_line(const CriterionResult& r) {
  return detail::fmt(r.passed ? "PASS" : "FAIL", " [", r.id, "] ", r.name, ": ", r.measured, " (", r.seconds, " s)");
}

inline nlohmann::ordered_json to_json(const std::vector<CriterionResult>& rows) {
  nlohmann::ordered_json j;
  j["schema"] = "bench/v1";
  j["criteria"] = nlohmann::ordered_json::array();
  std::size_t passed = 0;
  for (const auto& r : rows) {
    passed += r.passed;
    j["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"measured", r.measured},
                             {"seconds", r.seconds}});
  }
  j["passed"] = passed;
  j["total"] = rows.size();
  return j;
}

}  // namespace semistream::bench
