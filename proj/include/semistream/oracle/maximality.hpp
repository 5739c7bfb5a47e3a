#pragma once

#include <string>
#include <vector>

#include "semistream/core/graph.hpp"

namespace semistream::oracle {

/// Plain-data view of a MaximalPaths instance, kept separate from the
/// algorithm's own types so the checker shares no code with it.
///
/// sink_group[v] is kNoNode for non-sinks. Sinks with the same group id
/// stand for one contracted sink: reaching any of them uses the group, and
/// all of its nodes then count as covered.
struct PathsInstanceView {
  std::vector<std::vector<NodeId>> input_paths;
  std::vector<NodeId> sink_group;
};

struct CheckResult {
  bool ok = true;
  std::string reason;
};

/// Structural form of each output path: starts with a prefix of an input
/// path (from its source), continues through nodes on no input path and
/// no sink, ends at a sink; consecutive nodes adjacent; paths node-disjoint
/// and no sink group used twice.
inline CheckResult check_paths_form(const AdjacencyGraph& g, const PathsInstanceView& inst,
                                    const std::vector<std::vector<NodeId>>& out) {
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> on_input(n, kNoNode);
  std::vector<std::size_t> pos(n, 0);
  for (std::size_t p = 0; p < inst.input_paths.size(); ++p) {
    for (std::size_t i = 0; i < inst.input_paths[p].size(); ++i) {
      on_input[inst.input_paths[p][i]] = static_cast<NodeId>(p);
      pos[inst.input_paths[p][i]] = i;
    }
  }
  std::vector<bool> used(n, false);
  std::vector<bool> group_used(n + 1, false);
  std::vector<bool> source_used(inst.input_paths.size(), false);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& path = out[k];
    const std::string tag = "output path " + std::to_string(k) + ": ";
    if (path.empty()) return {false, tag + "empty"};
    const NodeId first = path.front();
    if (on_input[first] == kNoNode || pos[first] != 0) return {false, tag + "does not start at a source"};
    const NodeId which = on_input[first];
    if (source_used[which]) return {false, tag + "source used twice"};
    source_used[which] = true;
    std::size_t i = 0;
    while (i < path.size() && on_input[path[i]] == which && pos[path[i]] == i) ++i;
    for (std::size_t j = i; j + 1 < path.size(); ++j) {
      const NodeId x = path[j];
      if (on_input[x] != kNoNode) return {false, tag + "detour touches an input path"};
      if (inst.sink_group[x] != kNoNode) return {false, tag + "passes through a sink"};
    }
    const NodeId last = path.back();
    if (inst.sink_group[last] == kNoNode) return {false, tag + "does not end at a sink"};
    if (on_input[last] != kNoNode) return {false, tag + "ends on an input path node"};
    if (group_used[inst.sink_group[last]]) return {false, tag + "sink group used twice"};
    group_used[inst.sink_group[last]] = true;
    for (std::size_t j = 0; j < path.size(); ++j) {
      if (used[path[j]]) return {false, tag + "shares node " + std::to_string(path[j])};
      used[path[j]] = true;
      if (j + 1 < path.size() && !g.has_edge(path[j], path[j + 1])) return {false, tag + "non-edge step"};
    }
  }
  return {};
}

/// Maximality: every input-path node not on an output path has no route to
/// an unused sink through nodes that are not covered by the output.
inline CheckResult maximality_check(const AdjacencyGraph& g, const PathsInstanceView& inst,
                                    const std::vector<std::vector<NodeId>>& out) {
  const std::size_t n = g.num_nodes();
  std::vector<bool> covered(n, false);
  std::vector<bool> group_used(n + 1, false);
  for (const auto& path : out) {
    for (NodeId v : path) covered[v] = true;
    if (!path.empty() && inst.sink_group[path.back()] != kNoNode) group_used[inst.sink_group[path.back()]] = true;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (inst.sink_group[v] != kNoNode && group_used[inst.sink_group[v]]) covered[v] = true;
  }
  // Multi-source BFS from every unused sink backwards over uncovered nodes.
  std::vector<bool> reach(n, false);
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < n; ++v) {
    if (!covered[v] && inst.sink_group[v] != kNoNode) {
      reach[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : g.neighbors(x)) {
      if (!covered[y] && !reach[y]) {
        reach[y] = true;
        stack.push_back(y);
      }
    }
  }
  for (const auto& path : inst.input_paths) {
    for (NodeId v : path) {
      if (!covered[v] && reach[v]) {
        return {false, "input node " + std::to_string(v) + " still reaches a free sink"};
      }
    }
  }
  return {};
}

}  // namespace semistream::oracle
