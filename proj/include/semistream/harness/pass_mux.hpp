#pragma once

#include <coroutine>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <vector>

#include "semistream/harness/meter.hpp"
#include "semistream/harness/task.hpp"

namespace semistream {

/// Shares stream passes between coroutines working on disjoint node sets.
///
/// Every node belongs to one lane. A coroutine asks for a pass on its lane
/// with `co_await lane.pass(handler)` and is resumed once the pass is over;
/// the handler sees, in lane-local ids, exactly the updates whose two
/// endpoints are in the lane. A pass starts only when every live coroutine
/// is waiting for one, so sibling subproblems advance together and a pass
/// serves all of them.
class PassMux {
 public:
  using Handler = std::function<void(NodeId a, NodeId b, int sign)>;

  class Lane {
   public:
    Lane() = default;
    Lane(PassMux* mux, std::uint32_t id) : mux_(mux), id_(id) {}

    struct PassAwaiter {
      PassMux* mux;
      std::uint32_t lane;
      Handler handler;
      bool await_ready() const noexcept { return false; }
      void await_suspend(std::coroutine_handle<> h) { mux->requests_.push_back({lane, std::move(handler), h}); }
      void await_resume() const noexcept {}
    };

    [[nodiscard]] PassAwaiter pass(Handler h) const { return {mux_, id_, std::move(h)}; }

    [[nodiscard]] std::size_t size() const { return mux_->lanes_[id_].size(); }
    [[nodiscard]] NodeId global(NodeId local) const { return mux_->lanes_[id_][local]; }
    [[nodiscard]] const std::vector<NodeId>& nodes() const { return mux_->lanes_[id_]; }
    [[nodiscard]] std::uint32_t id() const { return id_; }
    [[nodiscard]] bool turnstile() const { return mux_->stream_->turnstile(); }
    [[nodiscard]] PassMux& mux() const { return *mux_; }

   private:
    PassMux* mux_ = nullptr;
    std::uint32_t id_ = 0;
  };

  PassMux(const GraphStream& stream, Meter& meter)
      : stream_(&stream), meter_(&meter), lane_of_(stream.num_nodes(), 0), local_of_(stream.num_nodes()) {
    std::iota(local_of_.begin(), local_of_.end(), NodeId{0});
    lanes_.emplace_back(local_of_);
    account_ = meter.track("mux.lanes", [this] { return 2 * lane_of_.size(); });
  }
  PassMux(const PassMux&) = delete;
  PassMux& operator=(const PassMux&) = delete;

  /// Lane 0 holds every node until nodes are moved to newer lanes.
  [[nodiscard]] Lane root_lane() { return Lane(this, 0); }

  /// Moves `nodes` (global ids, in local-id order) to a fresh lane.
  Lane make_lane(std::vector<NodeId> nodes) {
    const auto id = static_cast<std::uint32_t>(lanes_.size());
    for (NodeId i = 0; i < nodes.size(); ++i) {
      lane_of_[nodes[i]] = id;
      local_of_[nodes[i]] = i;
    }
    lanes_.push_back(std::move(nodes));
    return Lane(this, id);
  }

  void spawn(Task<void> t) { fresh_.push_back(std::move(t)); }

  /// Drives every spawned task to completion. The first exception that
  /// escapes a top-level task is rethrown here.
  void run() {
    for (;;) {
      while (!fresh_.empty()) {
        Task<void> t = std::move(fresh_.front());
        fresh_.pop_front();
        t.handle().resume();
        settle(std::move(t));
      }
      if (requests_.empty()) break;
      auto batch = std::move(requests_);
      requests_.clear();
      std::vector<const Handler*> by_lane(lanes_.size(), nullptr);
      for (const auto& r : batch) by_lane[r.lane] = &r.handler;
      stream_pass(*stream_, *meter_, [&](const EdgeUpdate& up) {
        const auto l = lane_of_[up.u];
        if (l != lane_of_[up.v] || by_lane[l] == nullptr) return;
        (*by_lane[l])(local_of_[up.u], local_of_[up.v], up.sign);
      });
      ++passes_;
      for (auto& r : batch) r.waiter.resume();
      check_running();
    }
    check_running();
  }

  [[nodiscard]] std::size_t passes() const { return passes_; }
  [[nodiscard]] Meter& meter() const { return *meter_; }
  [[nodiscard]] std::size_t num_nodes() const { return lane_of_.size(); }

 private:
  struct Request {
    std::uint32_t lane;
    Handler handler;
    std::coroutine_handle<> waiter;
  };

  void settle(Task<void> t) {
    if (t.done()) {
      t.await_resume();  // rethrows
    } else {
      running_.push_back(std::move(t));
    }
  }

  void check_running() {
    for (std::size_t i = 0; i < running_.size();) {
      if (running_[i].done()) {
        Task<void> t = std::move(running_[i]);
        running_[i] = std::move(running_.back());
        running_.pop_back();
        t.await_resume();
      } else {
        ++i;
      }
    }
  }

  const GraphStream* stream_;
  Meter* meter_;
  std::vector<std::uint32_t> lane_of_;
  std::vector<NodeId> local_of_;
  std::deque<std::vector<NodeId>> lanes_;
  std::deque<Task<void>> fresh_;
  std::vector<Task<void>> running_;
  std::vector<Request> requests_;
  std::size_t passes_ = 0;
  Meter::Account account_;
};

/// Runs one coroutine over the whole graph and returns its result.
template <class T, class F>
T run_on_stream(const GraphStream& stream, Meter& meter, F&& make_task) {
  PassMux mux(stream, meter);
  std::optional<T> out;
  auto wrap = [](PassMux::Lane lane, F& mk, std::optional<T>& o) -> Task<void> {
    o.emplace(co_await mk(lane));
  };
  mux.spawn(wrap(mux.root_lane(), make_task, out));
  mux.run();
  return std::move(*out);
}

}  // namespace semistream
