#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "semistream/bfs/randomized.hpp"

namespace semistream {

struct DiameterStats {
  std::size_t s1_size = 0;
  unsigned s1_draws = 0;
  NodeId v_star = kNoNode;
  std::vector<NodeId> s2;
};

/// Approximate diameter with floor(2D/3) <= D* <= D w.h.p.
///
/// S_1 samples every node with probability ln n / sqrt n. v* is the node
/// farthest from S_1; then BFS runs from v* and from the ceil(sqrt n)
/// nodes closest to v*. D* is the largest label seen. Every BFS here is
/// the sampled-centre BFS with centre budget k, and every label row is
/// checked by a verification pass, so D* never exceeds D.
inline Dist diameter_approx(const GraphStream& stream, Meter& meter, std::size_t k,
                            const RandomizedBfsOptions& opt = {}, DiameterStats* stats_out = nullptr) {
  const std::size_t n = stream.num_nodes();
  if (n == 0) throw DomainError("empty graph");
  if (k == 0 || k > n) throw DomainError("k must lie in [1, n]");
  DiameterStats stats;
  if (n == 1) {
    stats.v_star = 0;
    if (stats_out) *stats_out = stats;
    return 0;
  }
  const double nn = static_cast<double>(n);
  const double p = std::min(1.0, std::log(nn) / std::sqrt(nn));
  std::vector<NodeId> s1;
  for (unsigned draw = 0; draw < 5 && s1.empty(); ++draw) {
    auto rng = make_rng(opt.seed, "diameter.s1", draw);
    for (NodeId v = 0; v < n; ++v) {
      if (bernoulli(rng, p)) s1.push_back(v);
    }
    stats.s1_draws = draw + 1;
  }
  if (s1.empty()) throw RetryableFailure("S_1 stayed empty after 5 draws");
  stats.s1_size = s1.size();

  Dist best = 0;
  auto run = [&](const std::vector<std::vector<NodeId>>& groups, std::string_view tag) {
    RandomizedBfsOptions o = opt;
    o.seed = derive_seed(opt.seed, tag);
    RandomizedBfsStats st;
    auto rows = detail::distance_rows(stream, meter, groups, k, o, st);
    detail::verify_rows(stream, meter, groups, rows);
    for (const auto& r : rows) best = std::max(best, *std::max_element(r.begin(), r.end()));
    return rows;
  };

  const auto to_s1 = run({s1}, "diameter.step1")[0];
  // Ties go to the lowest id: max_element returns the first maximum.
  const NodeId v_star = static_cast<NodeId>(std::max_element(to_s1.begin(), to_s1.end()) - to_s1.begin());
  stats.v_star = v_star;

  const auto from_v = run({{v_star}}, "diameter.step2")[0];
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return from_v[a] != from_v[b] ? from_v[a] < from_v[b] : a < b;
  });
  const auto s2_size = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(std::sqrt(nn))));
  stats.s2.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s2_size));
  run(detail::singletons(stats.s2), "diameter.step3");

  if (stats_out) *stats_out = std::move(stats);
  return best;
}

}  // namespace semistream
