#pragma once

#include <cstdint>
#include <deque>
#include <vector>

namespace semistream::detail {

/// Unit-capacity flow network with augmenting-path search. Edges can be
/// removed again in LIFO order, which is how trial edges are undone.
class UnitFlow {
 public:
  explicit UnitFlow(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_node() {
    adj_.emplace_back();
    return adj_.size() - 1;
  }

  std::size_t add_edge(std::size_t a, std::size_t b) {
    const std::size_t id = to_.size();
    to_.push_back(b);
    cap_.push_back(1);
    adj_[a].push_back(id);
    to_.push_back(a);
    cap_.push_back(0);
    adj_[b].push_back(id + 1);
    return id;
  }

  /// Drops every edge added after `mark` (a value of edge_mark()).
  void rollback(std::size_t mark) {
    while (to_.size() > mark) {
      const std::size_t id = to_.size() - 2;
      adj_[to_[id + 1]].pop_back();
      adj_[to_[id]].pop_back();
      to_.resize(id);
      cap_.resize(id);
    }
  }
  [[nodiscard]] std::size_t edge_mark() const { return to_.size(); }

  /// One BFS augmentation; true when a unit was pushed.
  bool augment(std::size_t s, std::size_t t) {
    std::vector<std::size_t> via(adj_.size(), kNone);
    std::vector<bool> seen(adj_.size(), false);
    std::deque<std::size_t> q{s};
    seen[s] = true;
    while (!q.empty() && !seen[t]) {
      const std::size_t x = q.front();
      q.pop_front();
      for (std::size_t id : adj_[x]) {
        const std::size_t y = to_[id];
        if (cap_[id] > 0 && !seen[y]) {
          seen[y] = true;
          via[y] = id;
          q.push_back(y);
        }
      }
    }
    if (!seen[t]) return false;
    for (std::size_t y = t; y != s; y = to_[via[y] ^ 1]) {
      --cap_[via[y]];
      ++cap_[via[y] ^ 1];
    }
    return true;
  }

  /// Forward edges out of x that carry flow.
  [[nodiscard]] std::vector<std::size_t> flow_out(std::size_t x) const {
    std::vector<std::size_t> out;
    for (std::size_t id : adj_[x]) {
      if ((id & 1) == 0 && cap_[id] == 0) out.push_back(to_[id]);
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> to_;
  std::vector<std::int32_t> cap_;
};

}  // namespace semistream::detail
