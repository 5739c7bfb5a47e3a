#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "semistream/core/rng.hpp"
#include "semistream/core/types.hpp"
#include "semistream/harness/meter.hpp"
#include "semistream/sketch/forest_sketch.hpp"
#include "semistream/sketch/l0_sampler.hpp"

namespace semistream {

struct WaveOptions {
  bool truncate = true;  // keep only the last three layers of every local BFS
  // Turnstile isolation: each repetition hashes the centres into buckets,
  // and every node keeps one l0 sampler per (repetition, bucket).
  unsigned reps = 0;     // 0 = ceil(log2 n)
  unsigned buckets = 0;  // 0 = 2 * ceil(max(ln n, |U| / h))
  unsigned sampler_reps = 2;
  // Optional instrumentation: one row per pass, one count per node.
  std::vector<std::vector<std::uint32_t>>* congestion = nullptr;
};

/// Radius-h local BFS from every centre u, started at pass tau_u.
///
/// During pass t the BFS of u expands layer i = t - tau_u. A node only
/// remembers the layers of u within one of the current frontier, which is
/// all that is needed to tell whether a neighbour of the frontier is new.
/// Passes in which no BFS is running are skipped.
///
/// Insertion-only streams expand frontiers edge by edge. Turnstile streams
/// sketch, for every node b and bucket j, the neighbours a lying on a
/// frontier of some not-yet-seen centre hashed to j; a sampled a teaches b
/// every such centre of a. A centre that is alone in its bucket in some
/// repetition is found whenever its sampler decodes.
class LocalBfsWave {
 public:
  using LabelFn = std::function<void(std::size_t center_idx, NodeId v, Dist d)>;

  LocalBfsWave(std::size_t n, std::vector<NodeId> centers, std::vector<std::uint32_t> start, Dist h,
               std::uint64_t seed, WaveOptions opt = {})
      : n_(n), centers_(std::move(centers)), start_(std::move(start)), h_(h), seed_(seed), opt_(opt), lists_(n),
        done_(centers_.size(), false) {}

  /// Runs every pass; `on_label` sees each (centre, node, distance) once,
  /// the centre itself at distance 0 included.
  void run(const GraphStream& stream, Meter& meter, const LabelFn& on_label) {
    const std::size_t c = centers_.size();
    auto acct = meter.track("bfs.wave.labels", [&] {
      std::size_t w = 0;
      for (const auto& l : lists_) w += 2 * l.size();
      return w + 2 * c;
    });
    std::uint32_t last = 0;
    for (std::size_t i = 0; i < c; ++i) last = std::max(last, start_[i] + h_);
    for (std::uint32_t t = 1; t <= last; ++t) {
      // Centres starting now enter their own lists at distance 0.
      for (std::size_t i = 0; i < c; ++i) {
        if (start_[i] == t) {
          lists_[centers_[i]].push_back({static_cast<std::uint32_t>(i), 0});
          on_label(i, centers_[i], 0);
        }
      }
      bool any = false;
      for (std::size_t i = 0; i < c; ++i) any = any || running(i, t);
      if (!any) {
        bool future = false;
        for (std::size_t i = 0; i < c; ++i) future = future || start_[i] > t;
        if (!future) break;
        continue;
      }
      std::vector<std::vector<Entry>> fresh(n_);
      if (stream.turnstile()) {
        turnstile_pass(stream, meter, t, fresh);
      } else {
        insertion_pass(stream, meter, t, fresh);
      }
      std::vector<bool> grew(c, false);
      for (NodeId v = 0; v < n_; ++v) {
        for (const Entry& e : fresh[v]) {
          lists_[v].push_back(e);
          grew[e.center] = true;
          on_label(e.center, v, e.d);
        }
      }
      if (opt_.congestion) record_congestion(t);
      for (std::size_t i = 0; i < c; ++i) {
        if (running(i, t) && (!grew[i] || t - start_[i] + 1 >= h_)) done_[i] = true;
      }
      ++passes_;
      if (opt_.truncate) truncate(t);
      meter.checkpoint();
    }
  }

  [[nodiscard]] std::size_t passes() const { return passes_; }

 private:
  struct Entry {
    std::uint32_t center;
    Dist d;
  };

  bool running(std::size_t i, std::uint32_t t) const { return !done_[i] && start_[i] <= t; }

  // Layer index expanded by centre i during pass t.
  Dist frontier(std::size_t i, std::uint32_t t) const { return static_cast<Dist>(t - start_[i]); }

  bool on_frontier(const Entry& e, std::uint32_t t) const {
    return running(e.center, t) && e.d == frontier(e.center, t) && e.d < h_;
  }

  static bool knows(const std::vector<Entry>& l, std::uint32_t center) {
    return std::any_of(l.begin(), l.end(), [&](const Entry& e) { return e.center == center; });
  }

  void offer(NodeId a, NodeId b, std::uint32_t t, std::vector<std::vector<Entry>>& fresh) const {
    for (const Entry& e : lists_[a]) {
      if (!on_frontier(e, t)) continue;
      if (knows(lists_[b], e.center) || knows(fresh[b], e.center)) continue;
      fresh[b].push_back({e.center, e.d + 1});
    }
  }

  void insertion_pass(const GraphStream& stream, Meter& meter, std::uint32_t t,
                      std::vector<std::vector<Entry>>& fresh) {
    auto acct = meter.track("bfs.wave.fresh", [&] {
      std::size_t w = 0;
      for (const auto& f : fresh) w += 2 * f.size();
      return w;
    });
    stream_pass(stream, meter, [&](const EdgeUpdate& up) {
      offer(up.u, up.v, t, fresh);
      offer(up.v, up.u, t, fresh);
    });
  }

  unsigned reps() const { return opt_.reps != 0 ? opt_.reps : std::max(1u, ceil_log2(n_)); }

  unsigned buckets() const {
    if (opt_.buckets != 0) return opt_.buckets;
    const double ln = std::log(static_cast<double>(std::max<std::size_t>(n_, 2)));
    const double x = std::max(ln, static_cast<double>(centers_.size()) / std::max<Dist>(h_, 1));
    return 2 * static_cast<unsigned>(std::ceil(x));
  }

  void build_buckets(unsigned R, unsigned B) {
    if (!bucket_.empty()) return;
    bucket_.assign(R, std::vector<std::uint32_t>(centers_.size()));
    for (unsigned r = 0; r < R; ++r) {
      const auto salt = derive_seed(seed_, "wave.bucket", r);
      for (std::uint32_t i = 0; i < centers_.size(); ++i) {
        bucket_[r][i] = static_cast<std::uint32_t>(splitmix64(salt ^ i) % B);
      }
    }
  }

  void turnstile_pass(const GraphStream& stream, Meter& meter, std::uint32_t t,
                      std::vector<std::vector<Entry>>& fresh) {
    const unsigned R = reps();
    const unsigned B = buckets();
    build_buckets(R, B);
    L0Params prm;
    prm.reps = opt_.sampler_reps;
    prm.levels = L0Params::levels_for(n_);
    std::vector<std::shared_ptr<const L0Hashes>> hashes;
    for (unsigned r = 0; r < R; ++r) {
      hashes.push_back(std::make_shared<const L0Hashes>(n_, derive_seed(seed_, "wave.sampler", t * 1024ULL + r), prm));
    }
    // Lazily allocated per node: R * B samplers.
    std::vector<std::vector<L0Sketch>> sk(n_);
    std::size_t allocated = 0;
    const std::size_t per = L0Sketch(hashes[0]).words();
    auto acct = meter.track("bfs.wave.samplers", [&] { return allocated * per; });
    std::vector<std::uint32_t> slots;
    auto feed = [&](NodeId a, NodeId b, int sign) {
      slots.clear();
      for (const Entry& e : lists_[a]) {
        if (!on_frontier(e, t) || knows(lists_[b], e.center)) continue;
        for (unsigned r = 0; r < R; ++r) slots.push_back(r * B + bucket_[r][e.center]);
      }
      if (slots.empty()) return;
      std::sort(slots.begin(), slots.end());
      slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
      if (sk[b].empty()) {
        sk[b].reserve(std::size_t{R} * B);
        for (unsigned r = 0; r < R; ++r) {
          for (unsigned j = 0; j < B; ++j) sk[b].emplace_back(hashes[r]);
        }
        allocated += std::size_t{R} * B;
      }
      std::vector<L0Placement> placed(R);
      std::vector<bool> have(R, false);
      for (std::uint32_t slot : slots) {
        const unsigned r = slot / B;
        if (!have[r]) {
          placed[r] = place(*hashes[r], a);
          have[r] = true;
        }
        sk[b][slot].apply(placed[r], sign);
      }
    };
    stream_pass(stream, meter, [&](const EdgeUpdate& up) {
      feed(up.u, up.v, up.sign);
      feed(up.v, up.u, up.sign);
    });
    for (NodeId b = 0; b < n_; ++b) {
      for (const L0Sketch& s : sk[b]) {
        const auto res = s.query();
        if (!res.found() || res.index >= n_) continue;
        const auto a = static_cast<NodeId>(res.index);
        for (const Entry& e : lists_[a]) {
          if (!on_frontier(e, t) || knows(lists_[b], e.center) || knows(fresh[b], e.center)) continue;
          fresh[b].push_back({e.center, e.d + 1});
        }
      }
    }
  }

  void truncate(std::uint32_t t) {
    for (auto& l : lists_) {
      std::erase_if(l, [&](const Entry& e) {
        if (done_[e.center]) return true;
        // Next pass expands layer t + 1 - tau; keep layers from t - tau on.
        return e.d + start_[e.center] < t;
      });
    }
  }

  void record_congestion(std::uint32_t t) {
    std::vector<std::uint32_t> row(n_, 0);
    for (NodeId v = 0; v < n_; ++v) {
      for (const Entry& e : lists_[v]) {
        const auto lo = static_cast<std::int64_t>(start_[e.center]) + e.d - 1;
        if (lo <= t && t <= lo + 2) ++row[v];
      }
    }
    opt_.congestion->push_back(std::move(row));
  }

  std::size_t n_;
  std::vector<NodeId> centers_;
  std::vector<std::uint32_t> start_;
  Dist h_;
  std::uint64_t seed_;
  WaveOptions opt_;
  std::vector<std::vector<Entry>> lists_;
  std::vector<bool> done_;
  std::vector<std::vector<std::uint32_t>> bucket_;
  std::size_t passes_ = 0;
};

}  // namespace semistream
