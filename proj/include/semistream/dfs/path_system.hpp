#pragma once

#include <string>
#include <vector>

#include "semistream/core/graph.hpp"

namespace semistream {

using Path = std::vector<NodeId>;

/// Node-disjoint directed paths.
struct PathSystem {
  std::vector<Path> paths;

  [[nodiscard]] std::size_t size() const { return paths.size(); }
  [[nodiscard]] bool empty() const { return paths.empty(); }

  [[nodiscard]] std::size_t node_count() const {
    std::size_t c = 0;
    for (const Path& p : paths) c += p.size();
    return c;
  }

  /// Path index per node, kNoNode off the system.
  [[nodiscard]] std::vector<NodeId> owner(std::size_t n) const {
    std::vector<NodeId> own(n, kNoNode);
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (NodeId v : paths[i]) own[v] = static_cast<NodeId>(i);
    }
    return own;
  }

  /// Empty string when the system is valid in g, else the first problem.
  [[nodiscard]] std::string validate(const AdjacencyGraph& g) const {
    std::vector<bool> seen(g.num_nodes(), false);
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const Path& p = paths[i];
      if (p.empty()) return "path " + std::to_string(i) + " is empty";
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] >= g.num_nodes()) return "node out of range";
        if (seen[p[j]]) return "node " + std::to_string(p[j]) + " on two paths";
        seen[p[j]] = true;
        if (j + 1 < p.size() && !g.has_edge(p[j], p[j + 1])) return "path " + std::to_string(i) + " uses a non-edge";
      }
    }
    return {};
  }
};

/// Input of MaximalPaths. Each input path starts at its source. Sinks carry
/// a group id (kNoNode for non-sinks); a group stands for one contracted
/// sink, so at most one output path ends in it.
struct MaximalPathsInstance {
  std::vector<Path> paths;
  std::vector<NodeId> sink_group;

  /// Throws DomainError on a malformed instance.
  void check(std::size_t n) const {
    if (sink_group.size() != n) throw DomainError("sink_group must have one entry per node");
    std::vector<bool> seen(n, false);
    for (const Path& p : paths) {
      if (p.empty()) throw DomainError("empty input path");
      for (NodeId v : p) {
        if (v >= n) throw DomainError("input path node out of range");
        if (seen[v]) throw DomainError("input paths overlap");
        if (sink_group[v] != kNoNode) throw DomainError("input path touches a sink");
        seen[v] = true;
      }
    }
  }
};

}  // namespace semistream
