#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "semistream/cert/certificate.hpp"
#include "semistream/core/tree.hpp"
#include "semistream/harness/stream.hpp"

namespace semistream {

struct DfsSimpleOptions {
  std::uint64_t seed = 0;
  unsigned attempts = 10;  // turnstile certificate retries per subproblem
  StackedSketchOptions cert{};
};

/// What one subproblem looked like at one level: its nodes (global ids)
/// and the DFS tree of its certificate, as global parents and depths
/// relative to the subproblem root.
struct DfsLevelView {
  std::size_t level = 0;
  std::vector<NodeId> nodes;
  std::vector<NodeId> parent;
  std::vector<Dist> depth;
};

struct DfsSimpleStats {
  std::size_t levels = 0;
  std::size_t subproblems = 0;
  std::size_t retries = 0;
  std::size_t decode_failures = 0;  // turnstile certificate did not decode
  std::size_t disconnected = 0;     // decoded certificate missed connectivity
  std::size_t layering_redos = 0;   // crossing edges found by the next pass
  std::function<void(const DfsLevelView&)> observer;
};

namespace detail {

/// Lowest-id-first iterative DFS of an edge list over m local nodes.
inline std::vector<NodeId> dfs_parents(std::size_t m, const std::vector<Edge>& edges, NodeId root) {
  std::vector<std::vector<NodeId>> adj(m);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<NodeId> parent(m, kNoNode);
  std::vector<bool> seen(m, false);
  std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
  seen[root] = true;
  while (!stack.empty()) {
    auto& [x, next] = stack.back();
    if (next == adj[x].size()) {
      stack.pop_back();
      continue;
    }
    const NodeId y = adj[x][next++];
    if (!seen[y]) {
      seen[y] = true;
      parent[y] = x;
      stack.emplace_back(y, 0);
    }
  }
  for (NodeId v = 0; v < m; ++v) {
    if (!seen[v]) throw DomainError("graph is not connected");
  }
  return parent;
}

}  // namespace detail

/// DFS tree in ceil(h/k) passes for output height h: each pass builds a
/// (k+1)-VC certificate of every open subproblem, takes a DFS tree of the
/// certificate, fixes its top k+1 layers, and opens a subproblem for each
/// depth-k node that has descendants (the node plus its descendants,
/// rooted at the node). No edge of G joins two such subproblems.
///
/// A sketched certificate can miss connectivity. On turnstile streams the
/// following pass also counts, with signs, the edges that would break the
/// layering of the previous level (not ancestor-related and not below a
/// common depth-k node); a subproblem with a non-zero count is redone with
/// a fresh seed and whatever grew out of it is dropped. That costs one
/// extra pass at the end.
inline RootedTree dfs_simple(const GraphStream& stream, Meter& meter, NodeId r, std::size_t k,
                             const DfsSimpleOptions& opt = {}, DfsSimpleStats* stats = nullptr) {
  const std::size_t n = stream.num_nodes();
  if (r >= n) throw DomainError("root out of range");
  if (k == 0) throw DomainError("dfs_simple needs k >= 1");
  DfsSimpleStats local;
  DfsSimpleStats& st = stats != nullptr ? *stats : local;
  const auto s = static_cast<unsigned>(std::min(k + 1, n));
  const bool turnstile = stream.turnstile();
  constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

  struct Sub {
    std::vector<NodeId> nodes;  // global, local id = index
    NodeId root = 0;            // local
    std::uint64_t seed = 0;
    unsigned failures = 0;
    std::uint32_t origin = kNone;  // index of the parent subproblem in the previous level
    std::shared_ptr<DfsLevelView> view;  // turnstile: reported once the layering is confirmed
  };
  std::vector<NodeId> parent(n, kNoNode);
  std::vector<std::uint32_t> sub_of(n, kNone);
  std::vector<NodeId> local_of(n);
  // Layering of the previous level, for the turnstile check.
  std::vector<std::uint32_t> prev_of(n, kNone);
  std::vector<std::uint32_t> pre(n), post(n);
  std::vector<NodeId> below(n, kNoNode);  // depth-k ancestor
  std::vector<Sub> prev;                  // the previous level's subproblems, as opened
  std::vector<Sub> open;
  {
    Sub top;
    top.nodes.resize(n);
    for (NodeId v = 0; v < n; ++v) top.nodes[v] = v;
    top.root = r;
    top.seed = opt.seed;
    open.push_back(std::move(top));
  }
  auto acct = meter.track("dfs.simple", [&] { return 7 * n; });

  for (std::size_t level = 0; !open.empty() || !prev.empty(); ++level) {
    using Builder = std::variant<InsertionCertificateBuilder, TurnstileCertificateBuilder>;
    std::vector<std::unique_ptr<Builder>> builders;
    std::fill(sub_of.begin(), sub_of.end(), kNone);
    for (std::size_t i = 0; i < open.size(); ++i) {
      for (std::size_t j = 0; j < open[i].nodes.size(); ++j) {
        sub_of[open[i].nodes[j]] = static_cast<std::uint32_t>(i);
        local_of[open[i].nodes[j]] = static_cast<NodeId>(j);
      }
      const std::size_t m = open[i].nodes.size();
      const unsigned sm = std::min<unsigned>(s, static_cast<unsigned>(m));
      if (turnstile) {
        builders.push_back(std::make_unique<Builder>(std::in_place_type<TurnstileCertificateBuilder>, m, sm,
                                                     derive_seed(open[i].seed, "dfs.simple.cert", open[i].failures),
                                                     opt.cert));
      } else {
        builders.push_back(std::make_unique<Builder>(std::in_place_type<InsertionCertificateBuilder>, m, sm));
      }
    }
    auto cert_acct = meter.track("dfs.simple.certificates", [&] {
      std::size_t w = 0;
      for (const auto& b : builders) w += std::visit([](const auto& x) { return x.words(); }, *b);
      return w;
    });
    std::vector<std::int64_t> crossing(prev.size(), 0);
    stream_pass(stream, meter, [&](const EdgeUpdate& up) {
      const auto pu = prev_of[up.u];
      if (pu != kNone && pu == prev_of[up.v]) {
        const bool related = (pre[up.u] <= pre[up.v] && post[up.v] <= post[up.u]) ||
                             (pre[up.v] <= pre[up.u] && post[up.u] <= post[up.v]);
        if (!related && (below[up.u] == kNoNode || below[up.u] != below[up.v])) crossing[pu] += up.sign;
      }
      const auto su = sub_of[up.u];
      if (su == kNone || su != sub_of[up.v]) return;
      const NodeId a = local_of[up.u], b = local_of[up.v];
      std::visit(
          [&](auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, InsertionCertificateBuilder>) {
              x.add(Edge(a, b));
            } else {
              x.add(a, b, up.sign);
            }
          },
          *builders[su]);
    });
    ++st.levels;

    std::vector<Sub> next, redo;
    std::vector<bool> dropped(open.size(), false);
    for (std::size_t p = 0; p < prev.size(); ++p) {
      if (crossing[p] == 0) {
        if (st.observer && prev[p].view) st.observer(*prev[p].view);
        continue;
      }
      Sub again = std::move(prev[p]);
      if (++again.failures >= opt.attempts) throw RetryableFailure("certificate kept breaking the layering");
      ++st.retries;
      ++st.layering_redos;
      redo.push_back(std::move(again));
      for (std::size_t i = 0; i < open.size(); ++i) {
        if (open[i].origin == p) dropped[i] = true;
      }
    }
    std::fill(prev_of.begin(), prev_of.end(), kNone);
    std::vector<Sub> done;
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (dropped[i]) continue;
      Sub& sub = open[i];
      const std::size_t m = sub.nodes.size();
      std::vector<NodeId> lp;
      try {
        const std::vector<Edge> cert = std::visit([](auto& x) { return x.finish().edges; }, *builders[i]);
        lp = detail::dfs_parents(m, cert, sub.root);
      } catch (const RetryableFailure&) {
        if (++sub.failures >= opt.attempts) throw;
        ++st.retries;
        ++st.decode_failures;
        redo.push_back(std::move(sub));
        continue;
      } catch (const DomainError&) {
        // A sketched certificate of a connected piece can come out
        // disconnected; an exact one cannot.
        if (!turnstile || ++sub.failures >= opt.attempts) throw;
        ++st.retries;
        ++st.disconnected;
        redo.push_back(std::move(sub));
        continue;
      }
      ++st.subproblems;
      std::vector<Dist> depth(m, kInfDist);
      std::vector<std::vector<NodeId>> kids(m);
      for (NodeId v = 0; v < m; ++v) {
        if (lp[v] != kNoNode) kids[lp[v]].push_back(v);
      }
      std::vector<NodeId> order{sub.root};
      depth[sub.root] = 0;
      for (std::size_t at = 0; at < order.size(); ++at) {
        for (NodeId c : kids[order[at]]) {
          depth[c] = depth[order[at]] + 1;
          order.push_back(c);
        }
      }
      if (st.observer) {
        auto view = std::make_shared<DfsLevelView>();
        view->level = level;
        view->nodes = sub.nodes;
        view->parent.resize(m);
        for (NodeId v = 0; v < m; ++v) view->parent[v] = lp[v] == kNoNode ? kNoNode : sub.nodes[lp[v]];
        view->depth = depth;
        if (turnstile) {
          sub.view = std::move(view);
        } else {
          st.observer(*view);
        }
      }
      for (NodeId v = 0; v < m; ++v) {
        if (v != sub.root && depth[v] <= k) parent[sub.nodes[v]] = sub.nodes[lp[v]];
      }
      if (turnstile) {
        // Euler intervals and depth-k ancestors for the check in the next pass.
        const auto me = static_cast<std::uint32_t>(done.size());
        std::uint32_t clock = 0;
        std::vector<std::pair<NodeId, std::size_t>> walk{{sub.root, 0}};
        pre[sub.nodes[sub.root]] = clock++;
        below[sub.nodes[sub.root]] = k == 0 ? sub.nodes[sub.root] : kNoNode;
        while (!walk.empty()) {
          auto& [x, next_kid] = walk.back();
          if (next_kid == kids[x].size()) {
            post[sub.nodes[x]] = clock++;
            walk.pop_back();
            continue;
          }
          const NodeId c = kids[x][next_kid++];
          const NodeId gc = sub.nodes[c];
          pre[gc] = clock++;
          below[gc] = depth[c] == k ? gc : (depth[c] > k ? below[sub.nodes[x]] : kNoNode);
          walk.emplace_back(c, 0);
        }
        for (NodeId v : sub.nodes) prev_of[v] = me;
      }
      const auto me = static_cast<std::uint32_t>(done.size());
      for (NodeId v = 0; v < m; ++v) {
        if (depth[v] != k || kids[v].empty()) continue;
        Sub child;
        child.seed = derive_seed(sub.seed, "dfs.simple.sub", sub.nodes[v]);
        child.origin = me;
        std::vector<NodeId> stack{v};
        while (!stack.empty()) {
          const NodeId x = stack.back();
          stack.pop_back();
          child.nodes.push_back(sub.nodes[x]);
          for (NodeId c : kids[x]) stack.push_back(c);
        }
        std::sort(child.nodes.begin(), child.nodes.end());
        child.root = static_cast<NodeId>(std::lower_bound(child.nodes.begin(), child.nodes.end(), sub.nodes[v]) -
                                         child.nodes.begin());
        next.push_back(std::move(child));
      }
      Sub kept = std::move(sub);
      kept.origin = kNone;
      done.push_back(std::move(kept));
    }
    for (Sub& x : redo) {
      x.origin = kNone;
      x.view.reset();
      next.push_back(std::move(x));
    }
    prev = turnstile ? std::move(done) : std::vector<Sub>{};
    open = std::move(next);
  }
  return RootedTree::from_parents(r, std::move(parent));
}

}  // namespace semistream
