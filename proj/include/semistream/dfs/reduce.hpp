#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "semistream/dfs/maximal_paths.hpp"

namespace semistream {

struct ReduceStats {
  std::size_t calls = 0;
  std::size_t met_target = 0;  // calls with |Q'| <= ceil(11|Q|/12)
  std::size_t readded = 0;     // dropped pieces put back to keep components small
  std::size_t max_stage1_iterations = 0;
  std::size_t maximal_paths_calls = 0;
};

namespace detail {

inline std::size_t reduce_target(std::size_t q) { return (11 * q + 11) / 12; }

/// One link found by MaximalPaths: a prefix of a half of a short path, a
/// detour, and the sink it reached on a long path.
struct HalfLink {
  std::size_t prefix = 0;  // nodes of the half kept
  Path detour;             // between the prefix and the sink, exclusive
  std::size_t long_path = 0;
  std::size_t sink_pos = 0;
};

}  // namespace detail

/// Shrinks a separator. The longer half of Q becomes the sink side (one
/// contracted sink per path); every shorter path is cut in the middle into
/// two halves that run outwards from the cut, and MaximalPaths links the
/// halves to long paths. A short path whose halves reach long paths l1 and
/// l2 becomes
///     (longer side of l1 up to its sink) detour1^R half1-prefix^R
///     half2-prefix detour2 (longer side of l2 from its sink),
/// so three paths turn into one; with a single link the other half is kept
/// whole and two paths turn into one. What is left over leaves Q. If that
/// makes a component of G - Q' larger than half the lane, the left-over
/// pieces inside that component go back into Q' as paths of their own.
inline Task<PathSystem> co_reduce(PassMux::Lane lane, PathSystem Q, std::size_t k, std::size_t s,
                                  std::uint64_t seed, ReduceStats* stats = nullptr) {
  const std::size_t m = lane.size();
  ReduceStats local;
  ReduceStats& st = stats != nullptr ? *stats : local;
  const std::size_t q = Q.size();
  if (q < 12) throw DomainError("Reduce needs at least 12 paths");
  ++st.calls;

  std::vector<std::size_t> order(q);
  for (std::size_t i = 0; i < q; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return Q.paths[a].size() > Q.paths[b].size(); });
  const std::size_t nl = (q + 1) / 2;
  std::vector<Path> longs, shorts;
  for (std::size_t i = 0; i < q; ++i) (i < nl ? longs : shorts).push_back(std::move(Q.paths[order[i]]));

  MaximalPathsInstance inst;
  inst.sink_group.assign(m, kNoNode);
  std::vector<std::size_t> long_of(m, detail::kNoUnit), pos_on(m, 0);
  for (std::size_t i = 0; i < longs.size(); ++i) {
    for (std::size_t j = 0; j < longs[i].size(); ++j) {
      inst.sink_group[longs[i][j]] = longs[i].front();
      long_of[longs[i][j]] = i;
      pos_on[longs[i][j]] = j;
    }
  }
  // Halves: index 2i runs from the middle towards the front, 2i+1 from
  // just after the middle towards the back.
  std::vector<Path> halves(2 * shorts.size());
  std::vector<std::size_t> half_of(m, detail::kNoUnit);
  for (std::size_t i = 0; i < shorts.size(); ++i) {
    const Path& p = shorts[i];
    const std::size_t c = (p.size() + 1) / 2;
    halves[2 * i].assign(p.rend() - static_cast<std::ptrdiff_t>(c), p.rend());
    halves[2 * i + 1].assign(p.begin() + static_cast<std::ptrdiff_t>(c), p.end());
    for (std::size_t h : {2 * i, 2 * i + 1}) {
      if (halves[h].empty()) continue;
      half_of[halves[h].front()] = h;
      inst.paths.push_back(halves[h]);
    }
  }

  MaximalPathsStats mps;
  ++st.maximal_paths_calls;
  const PathSystem linked = co_await co_maximal_paths(lane, std::move(inst), k, s, seed, &mps);
  st.max_stage1_iterations = std::max(st.max_stage1_iterations, mps.stage1_iterations);

  std::vector<std::optional<detail::HalfLink>> link(halves.size());
  for (const Path& out : linked.paths) {
    const std::size_t h = half_of[out.front()];
    detail::HalfLink hl;
    while (hl.prefix < out.size() && hl.prefix < halves[h].size() && out[hl.prefix] == halves[h][hl.prefix]) {
      ++hl.prefix;
    }
    hl.detour.assign(out.begin() + static_cast<std::ptrdiff_t>(hl.prefix), out.end() - 1);
    hl.long_path = long_of[out.back()];
    hl.sink_pos = pos_on[out.back()];
    link[h] = std::move(hl);
  }

  // The longer side of a long path, as a sequence that ends at the sink.
  std::vector<bool> long_used(longs.size(), false);
  std::vector<Path> dropped;
  auto side_to_sink = [&](const detail::HalfLink& hl) {
    const Path& l = longs[hl.long_path];
    long_used[hl.long_path] = true;
    const std::size_t before = hl.sink_pos, after = l.size() - 1 - hl.sink_pos;
    Path side, rest;
    if (before >= after) {
      side.assign(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(hl.sink_pos) + 1);
      rest.assign(l.begin() + static_cast<std::ptrdiff_t>(hl.sink_pos) + 1, l.end());
    } else {
      side.assign(l.rbegin(), l.rend() - static_cast<std::ptrdiff_t>(hl.sink_pos));
      rest.assign(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(hl.sink_pos));
    }
    if (!rest.empty()) dropped.push_back(std::move(rest));
    return side;
  };
  auto drop_tail = [&](const Path& half, std::size_t keep) {
    if (keep < half.size()) dropped.emplace_back(half.begin() + static_cast<std::ptrdiff_t>(keep), half.end());
  };

  PathSystem next;
  for (std::size_t i = 0; i < shorts.size(); ++i) {
    const auto& a = link[2 * i];
    const auto& b = link[2 * i + 1];
    const Path& ha = halves[2 * i];
    const Path& hb = halves[2 * i + 1];
    if (!a && !b) {
      next.paths.push_back(std::move(shorts[i]));
      continue;
    }
    Path merged;
    if (a) {
      merged = side_to_sink(*a);
      merged.insert(merged.end(), a->detour.rbegin(), a->detour.rend());
      merged.insert(merged.end(), std::make_reverse_iterator(ha.begin() + static_cast<std::ptrdiff_t>(a->prefix)),
                    ha.rend());
      drop_tail(ha, a->prefix);
    } else {
      merged.assign(ha.rbegin(), ha.rend());
    }
    if (b) {
      merged.insert(merged.end(), hb.begin(), hb.begin() + static_cast<std::ptrdiff_t>(b->prefix));
      merged.insert(merged.end(), b->detour.begin(), b->detour.end());
      Path side = side_to_sink(*b);
      merged.insert(merged.end(), side.rbegin(), side.rend());
      drop_tail(hb, b->prefix);
    } else {
      merged.insert(merged.end(), hb.begin(), hb.end());
    }
    next.paths.push_back(std::move(merged));
  }
  for (std::size_t i = 0; i < longs.size(); ++i) {
    if (!long_used[i]) next.paths.push_back(std::move(longs[i]));
  }

  if (!dropped.empty()) {
    std::vector<bool> off(m, true);
    for (const Path& p : next.paths) {
      for (NodeId v : p) off[v] = false;
    }
    const auto forest = co_await detail::co_spanning_forest(lane, off, derive_seed(seed, "reduce.check", 0));
    std::uint32_t comps = 0;
    const auto unit = detail::forest_units(m, off, forest, comps);
    std::vector<std::size_t> size(comps, 0);
    for (NodeId v = 0; v < m; ++v) {
      if (unit[v] != detail::kNoUnit) ++size[unit[v]];
    }
    for (Path& piece : dropped) {
      if (2 * size[unit[piece.front()]] > m) {
        next.paths.push_back(std::move(piece));
        ++st.readded;
      }
    }
  }
  if (next.size() <= detail::reduce_target(q)) ++st.met_target;
  co_return next;
}

struct SeparatorStats {
  std::size_t initial_size = 0;
  std::size_t final_size = 0;
  ReduceStats reduce;
};

/// Separator: a maximal matching as length-1 paths, then Reduce while at
/// least 12 paths remain and Reduce keeps making progress.
inline Task<PathSystem> co_separator(PassMux::Lane lane, std::size_t k, std::size_t s, std::uint64_t seed,
                                     SeparatorStats* stats = nullptr) {
  SeparatorStats local;
  SeparatorStats& st = stats != nullptr ? *stats : local;
  MatchingOptions mo;
  mo.seed = derive_seed(seed, "separator.matching", 0);
  const auto matching = co_await co_maximal_matching(lane, MatchingFilter{}, mo);
  PathSystem Q;
  for (const Edge& e : matching) Q.paths.push_back({e.u, e.v});
  st.initial_size = Q.size();
  for (std::uint64_t round = 0; Q.size() >= 12; ++round) {
    PathSystem next = co_await co_reduce(lane, Q, k, s, derive_seed(seed, "separator.reduce", round), &st.reduce);
    if (next.size() >= Q.size()) break;
    Q = std::move(next);
  }
  st.final_size = Q.size();
  co_return Q;
}

inline PathSystem reduce_separator(const GraphStream& stream, Meter& meter, const PathSystem& Q, std::size_t k,
                                   std::size_t s, std::uint64_t seed = 0, ReduceStats* stats = nullptr) {
  return run_on_stream<PathSystem>(stream, meter,
                                   [&](PassMux::Lane lane) { return co_reduce(lane, Q, k, s, seed, stats); });
}

inline PathSystem build_separator(const GraphStream& stream, Meter& meter, std::size_t k, std::size_t s,
                                  std::uint64_t seed = 0, SeparatorStats* stats = nullptr) {
  return run_on_stream<PathSystem>(stream, meter,
                                   [&](PassMux::Lane lane) { return co_separator(lane, k, s, seed, stats); });
}

}  // namespace semistream
