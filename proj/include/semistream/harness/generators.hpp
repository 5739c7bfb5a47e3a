#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "semistream/core/rng.hpp"
#include "semistream/core/types.hpp"
#include "semistream/core/union_find.hpp"
#include "semistream/harness/stream.hpp"

namespace semistream {

/// A generated fixture graph before it is turned into a stream.
struct EdgeList {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

namespace gen {

inline EdgeList path(std::size_t n) {
  if (n == 0) throw DomainError("path needs n >= 1");
  EdgeList g{n, {}};
  for (NodeId i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

/// Node 0 is the center.
inline EdgeList star(std::size_t n) {
  if (n == 0) throw DomainError("star needs n >= 1");
  EdgeList g{n, {}};
  for (NodeId i = 1; i < n; ++i) g.edges.emplace_back(0, i);
  return g;
}

inline EdgeList cycle(std::size_t n) {
  if (n < 3) throw DomainError("cycle needs n >= 3");
  EdgeList g = path(n);
  g.edges.emplace_back(0, static_cast<NodeId>(n - 1));
  return g;
}

inline EdgeList complete(std::size_t n) {
  if (n == 0) throw DomainError("complete graph needs n >= 1");
  EdgeList g{n, {}};
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  }
  return g;
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline EdgeList petersen() {
  EdgeList g{10, {}};
  for (NodeId i = 0; i < 5; ++i) {
    g.edges.emplace_back(i, (i + 1) % 5);
    g.edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    g.edges.emplace_back(i, 5 + i);
  }
  return g;
}

/// G(n, p), then joined into one component by linking a random node of
/// each extra component to a random node of the growing one.
inline EdgeList gnp(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw DomainError("gnp needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("gnp needs 0 <= p <= 1");
  auto rng = make_rng(seed, "gen.gnp");
  EdgeList g{n, {}};
  UnionFind uf(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (bernoulli(rng, p)) {
        g.edges.emplace_back(u, v);
        uf.unite(u, v);
      }
    }
  }
  std::vector<std::vector<NodeId>> comps;
  std::vector<NodeId> comp_of_root(n, kNoNode);
  for (NodeId v = 0; v < n; ++v) {
    const NodeId r = uf.find(v);
    if (comp_of_root[r] == kNoNode) {
      comp_of_root[r] = static_cast<NodeId>(comps.size());
      comps.emplace_back();
    }
    comps[comp_of_root[r]].push_back(v);
  }
  std::vector<NodeId> joined = comps.empty() ? std::vector<NodeId>{} : comps[0];
  for (std::size_t c = 1; c < comps.size(); ++c) {
    const NodeId a = joined[uniform_int(rng, 0, joined.size() - 1)];
    const NodeId b = comps[c][uniform_int(rng, 0, comps[c].size() - 1)];
    g.edges.emplace_back(a, b);
    joined.insert(joined.end(), comps[c].begin(), comps[c].end());
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

/// Uniform-ish connected d-regular simple graph via the pairing model with
/// restarts. nd odd or d >= n is infeasible.
inline EdgeList random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if ((n * d) % 2 != 0) throw DomainError("random_regular: n*d must be even");
  if (d >= n) throw DomainError("random_regular: need d < n");
  if (d == 0 && n > 1) throw DomainError("random_regular: d = 0 is disconnected for n > 1");
  if (d == 1 && n > 2) throw DomainError("random_regular: d = 1 is disconnected for n > 2");
  auto rng = make_rng(seed, "gen.random_regular");
  if (d == 2) {
    // A 2-regular connected graph is a Hamiltonian cycle.
    std::vector<NodeId> perm(n);
    for (NodeId i = 0; i < n; ++i) perm[i] = i;
    shuffle_range(perm.begin(), perm.end(), rng);
    EdgeList g{n, {}};
    for (std::size_t i = 0; i < n; ++i) g.edges.emplace_back(perm[i], perm[(i + 1) % n]);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
  }
  std::vector<NodeId> points(n * d);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<NodeId>(i / d);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    shuffle_range(points.begin(), points.end(), rng);
    EdgeList g{n, {}};
    bool ok = true;
    for (std::size_t i = 0; i < points.size(); i += 2) {
      if (points[i] == points[i + 1]) {
        ok = false;
        break;
      }
      g.edges.emplace_back(points[i], points[i + 1]);
    }
    if (!ok) continue;
    std::sort(g.edges.begin(), g.edges.end());
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) continue;
    UnionFind uf(n);
    std::size_t comps = n;
    for (const Edge& e : g.edges) comps -= uf.unite(e.u, e.v) ? 1 : 0;
    if (comps == 1) return g;
  }
  throw DomainError("random_regular: no connected simple pairing found");
}

/// Layers V_0 = {0}, V_1..V_k with k = ceil((n-1)/t), |V_i| = t except a
/// possibly smaller last layer; every pair of nodes in the same or in
/// adjacent layers is joined.
inline EdgeList layered_blocks(std::size_t n, std::size_t t) {
  if (n < 2 || t == 0) throw DomainError("layered_blocks needs n >= 2 and t >= 1");
  std::vector<std::size_t> layer(n);
  layer[0] = 0;
  for (std::size_t v = 1; v < n; ++v) layer[v] = 1 + (v - 1) / t;
  EdgeList g{n, {}};
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (layer[v] - layer[u] <= 1) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

/// Node ids of one copy of the Index gadget.
struct IndexHardLayout {
  std::size_t n = 0;  // side of the bipartite block H
  std::size_t copies = 0;
  static constexpr NodeId hub = 0;
  [[nodiscard]] NodeId base(std::size_t c) const { return static_cast<NodeId>(1 + c * (2 * n + 2)); }
  [[nodiscard]] NodeId x(std::size_t c, std::size_t i) const { return base(c) + static_cast<NodeId>(i); }
  [[nodiscard]] NodeId y(std::size_t c, std::size_t j) const { return base(c) + static_cast<NodeId>(n + j); }
  [[nodiscard]] NodeId ell(std::size_t c) const { return base(c) + static_cast<NodeId>(2 * n); }
  [[nodiscard]] NodeId t(std::size_t c) const { return base(c) + static_cast<NodeId>(2 * n + 1); }
  [[nodiscard]] std::size_t num_nodes() const { return copies * (2 * n + 2) + 1; }
};

/// Index-reduction gadget with k+1 copies of H + {ell, t} sharing hub s.
///
/// bits has n*n entries; bit (i, j) (0-based, row-major) is edge x_i -- y_j
/// in H. The query (qi, qj) wires s to every H node except y_qj, plus
/// ell -- x_qi, s -- t and t -- y_qj in each copy.
inline EdgeList index_hard(std::size_t n, std::size_t k, const std::vector<bool>& bits, std::size_t qi,
                           std::size_t qj) {
  if (n == 0) throw DomainError("index_hard needs n >= 1");
  if (bits.size() != n * n) throw DomainError("index_hard needs n*n bits");
  if (qi >= n || qj >= n) throw DomainError("index_hard query out of range");
  const IndexHardLayout lay{n, k + 1};
  EdgeList g{lay.num_nodes(), {}};
  for (std::size_t c = 0; c <= k; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (bits[i * n + j]) g.edges.emplace_back(lay.x(c, i), lay.y(c, j));
      }
    }
    for (std::size_t i = 0; i < n; ++i) g.edges.emplace_back(lay.hub, lay.x(c, i));
    for (std::size_t j = 0; j < n; ++j) {
      if (j != qj) g.edges.emplace_back(lay.hub, lay.y(c, j));
    }
    g.edges.emplace_back(lay.ell(c), lay.x(c, qi));
    g.edges.emplace_back(lay.hub, lay.t(c));
    g.edges.emplace_back(lay.t(c), lay.y(c, qj));
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

/// Random bit array with the queried bit forced to `bit`.
inline EdgeList index_hard(std::size_t n, std::size_t k, bool bit, std::uint64_t seed) {
  auto rng = make_rng(seed, "gen.index_hard");
  std::vector<bool> bits(n * n);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bernoulli(rng, 0.5);
  const auto qi = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
  const auto qj = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
  bits[qi * n + qj] = bit;
  return index_hard(n, k, bits, qi, qj);
}

}  // namespace gen

/// Stream of the edge list in a seed-shuffled order. Turnstile streams get
/// insert/delete churn with the same final graph.
inline GraphStream make_stream(const EdgeList& g, StreamModel model, std::uint64_t seed) {
  if (model == StreamModel::Turnstile) return with_churn(g.n, g.edges, derive_seed(seed, "stream.churn"));
  std::vector<Edge> order = g.edges;
  auto rng = make_rng(seed, "stream.order");
  shuffle_range(order.begin(), order.end(), rng);
  return GraphStream::insertion_only(g.n, order);
}

/// Parses "kind:arg,arg,..." (e.g. "gnp:500,0.02", "path:10",
/// "index_hard:3,2,1") and builds the graph. Throws DomainError on an
/// unknown kind or bad arity.
inline EdgeList generate(std::string_view spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string kind(spec.substr(0, colon));
  std::vector<double> args;
  if (colon != std::string_view::npos) {
    std::string rest(spec.substr(colon + 1));
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        args.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw DomainError("generator argument '" + tok + "' is not a number");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  auto need = [&](std::size_t count) {
    if (args.size() != count) {
      throw DomainError("generator '" + kind + "' takes " + std::to_string(count) + " argument(s)");
    }
  };
  auto as_size = [&](std::size_t i) {
    if (args[i] < 0 || args[i] != std::floor(args[i])) throw DomainError("generator argument must be a count");
    return static_cast<std::size_t>(args[i]);
  };
  if (kind == "path") {
    need(1);
    return gen::path(as_size(0));
  }
  if (kind == "star") {
    need(1);
    return gen::star(as_size(0));
  }
  if (kind == "cycle") {
    need(1);
    return gen::cycle(as_size(0));
  }
  if (kind == "complete") {
    need(1);
    return gen::complete(as_size(0));
  }
  if (kind == "petersen") {
    need(0);
    return gen::petersen();
  }
  if (kind == "gnp") {
    need(2);
    return gen::gnp(as_size(0), args[1], seed);
  }
  if (kind == "regular") {
    need(2);
    return gen::random_regular(as_size(0), as_size(1), seed);
  }
  if (kind == "layered") {
    need(2);
    return gen::layered_blocks(as_size(0), as_size(1));
  }
  if (kind == "index_hard") {
    need(3);
    return gen::index_hard(as_size(0), as_size(1), args[2] != 0.0, seed);
  }
  throw DomainError("unknown generator '" + kind + "'");
}

}  // namespace semistream
