#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "semistream/cert/degree_truncation.hpp"
#include "semistream/core/graph.hpp"
#include "semistream/core/tree.hpp"
#include "semistream/core/union_find.hpp"
#include "semistream/harness/meter.hpp"
#include "semistream/sketch/forest_sketch.hpp"

namespace semistream {

/// Smallest k >= 186 with 30 (1 + ln(k+1)) / (k+1) <= epsilon. The loss
/// term is decreasing in k, so a linear scan terminates for any
/// epsilon > 0.
inline std::size_t sparsifier_k(double epsilon) {
  if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
  std::size_t k = 186;
  for (;;) {
    const double x = static_cast<double>(k + 1);
    if (30.0 * (1.0 + std::log(x)) / x <= epsilon) return k;
    ++k;
  }
}

struct SparsifierOptions {
  std::uint64_t seed = 0;
  std::optional<std::size_t> forced_k = std::nullopt;  // waives the guarantee, e.g. for small tests
};

struct SparsifierResult {
  double epsilon = 0;
  std::size_t k = 0;
  std::vector<Edge> edges;  // S_k(G) plus the tree, sorted
  RootedTree tree_backbone;
  std::vector<std::size_t> degrees;  // exact degrees in G, counted in the same pass
  bool guarantee = false;  // k came from epsilon, not forced
};

/// One pass: S_k(G) and a spanning tree of G together. The tree is a
/// greedy union-find forest for insertion-only streams and a decoded
/// forest sketch for turnstile streams.
inline SparsifierResult build_sparsifier(const GraphStream& stream, Meter& meter, double epsilon,
                                         const SparsifierOptions& opt = {}) {
  const std::size_t n = stream.num_nodes();
  if (n == 0) throw DomainError("empty graph");
  SparsifierResult res;
  res.epsilon = epsilon;
  res.k = opt.forced_k ? *opt.forced_k : sparsifier_k(epsilon);
  res.guarantee = !opt.forced_k;
  std::vector<std::int64_t> deg(n, 0);
  std::vector<Edge> tree;
  DegreeTruncation trunc;

  if (!stream.turnstile()) {
    InsertionTruncationBuilder tb(n, res.k);
    UnionFind uf(n);
    auto acct = meter.track("sparsifier", [&] { return tb.words() + n + 2 * tree.size() + n; });
    stream_pass(stream, meter, [&](const EdgeUpdate& up) {
      tb.add(up.edge());
      ++deg[up.u];
      ++deg[up.v];
      if (uf.unite(up.u, up.v)) tree.push_back(up.edge());
    });
    trunc = tb.finish();
  } else {
    TurnstileTruncationBuilder tb(n, res.k, derive_seed(opt.seed, "sparsifier.truncation"));
    ForestSketch fs(n, derive_seed(opt.seed, "sparsifier.tree"));
    auto acct = meter.track("sparsifier.sketch", [&] { return tb.words() + fs.words() + n; });
    stream_pass(stream, meter, [&](const EdgeUpdate& up) {
      tb.add(up.u, up.v, up.sign);
      fs.update(up.u, up.v, up.sign);
      deg[up.u] += up.sign;
      deg[up.v] += up.sign;
    });
    trunc = tb.finish();
    tree = fs.decode_or_throw();
  }
  if (tree.size() + 1 != n) throw DomainError("input graph is not connected");
  std::sort(tree.begin(), tree.end());
  res.tree_backbone = RootedTree::from_edges(n, 0, tree);
  res.edges = std::move(trunc.edges);
  res.edges.insert(res.edges.end(), tree.begin(), tree.end());
  normalize_edges(res.edges);
  res.degrees.assign(deg.begin(), deg.end());
  return res;
}

}  // namespace semistream
