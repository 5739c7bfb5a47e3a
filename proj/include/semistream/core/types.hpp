#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace semistream {

/// Dense node identifier in [0, n).
using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Hop distance; kInfDist marks an unreachable node.
using Dist = std::uint32_t;
inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max();

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;

  [[nodiscard]] NodeId other(NodeId x) const { return x == u ? v : u; }
};

/// Edge index used by the incidence sketches: u * n + v with u < v.
inline std::uint64_t edge_index(Edge e, std::size_t n) {
  return static_cast<std::uint64_t>(e.u) * n + e.v;
}

inline Edge edge_from_index(std::uint64_t idx, std::size_t n) {
  return Edge(static_cast<NodeId>(idx / n), static_cast<NodeId>(idx % n));
}

// Error taxonomy. The CLI maps each class to a distinct exit status.

/// Stream contents violate the model (bad syntax, self-loop, multiplicity
/// outside {0,1}, id out of range).
class MalformedStream : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (disconnected graph, non-regular
/// graph for the cut, infeasible generator parameters, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A randomized subroutine failed in a detectable way; rerunning with a
/// fresh seed may succeed.
class RetryableFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict-mode space budget exceeded at a pass boundary.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force oracle asked to work beyond its configured size cap.
class OracleBudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace semistream
