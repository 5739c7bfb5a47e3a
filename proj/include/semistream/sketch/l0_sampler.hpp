#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "semistream/core/rng.hpp"
#include "semistream/sketch/hash.hpp"
#include "semistream/sketch/serialize.hpp"

namespace semistream {

/// Shape of an L0Sketch. Memory is reps * levels * buckets cells of three
/// words each.
struct L0Params {
  unsigned reps = 0;  // 0 = derived from the universe for failure ~ n^-2
  unsigned levels = 0;  // 0 = derived from the support bound
  unsigned buckets = 1;
  unsigned independence = 8;

  /// Levels needed so that some level holds O(buckets) support items when
  /// the support has at most `max_support` elements.
  static unsigned levels_for(std::uint64_t max_support) {
    return static_cast<unsigned>(std::bit_width(max_support)) + 2;
  }

  /// A single-bucket repetition misses with probability about 1/3, so
  /// 2 log_3 n repetitions give failure probability about n^-2.
  static unsigned reps_for(std::uint64_t n) {
    const double x = 2.0 * std::log(static_cast<double>(std::max<std::uint64_t>(n, 2))) / std::log(3.0);
    return std::max(4u, static_cast<unsigned>(std::ceil(x)));
  }
};

enum class L0Status { Found, Empty, Fail };

struct L0Result {
  L0Status status = L0Status::Fail;
  std::uint64_t index = 0;
  std::int64_t value = 0;

  [[nodiscard]] bool found() const { return status == L0Status::Found; }
};

/// Hash functions of one sketch family. Sketches built from the same seed
/// and params share an instance and can be added together.
class L0Hashes {
 public:
  /// Where an item lands in one repetition.
  struct Slot {
    unsigned top_level;  // item is present in levels 0..top_level
    unsigned bucket;
    std::uint64_t fp_term;  // z_rep^(index + 1)
  };

  L0Hashes(std::uint64_t universe, std::uint64_t seed, const L0Params& p)
      : universe_(universe), seed_(seed), params_(p) {
    if (params_.levels == 0) params_.levels = L0Params::levels_for(universe);
    if (params_.reps == 0) params_.reps = L0Params::reps_for(universe);
    if (params_.buckets == 0) throw std::invalid_argument("L0Params: buckets >= 1");
    if (universe >= mod61::kPrime) throw std::invalid_argument("L0 universe too large");
    auto rng = make_rng(seed, "l0.hashes");
    for (unsigned r = 0; r < params_.reps; ++r) {
      level_.emplace_back(rng, params_.independence);
      bucket_.emplace_back(rng, params_.independence);
      base_.push_back(uniform_int(rng, 2, mod61::kPrime - 2));
    }
  }

  [[nodiscard]] Slot slot(unsigned rep, std::uint64_t index) const {
    Slot s{};
    s.top_level = geometric_level(level_[rep](index), params_.levels - 1);
    s.bucket = params_.buckets == 1 ? 0u : static_cast<unsigned>(bucket_[rep](index) % params_.buckets);
    s.fp_term = mod61::pow(base_[rep], index + 1);
    return s;
  }

  [[nodiscard]] std::uint64_t fingerprint_base(unsigned rep) const { return base_[rep]; }
  [[nodiscard]] std::uint64_t universe() const { return universe_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] const L0Params& params() const { return params_; }

 private:
  std::uint64_t universe_;
  std::uint64_t seed_;
  L0Params params_;
  std::vector<PolyHash> level_;
  std::vector<PolyHash> bucket_;
  std::vector<std::uint64_t> base_;
};

/// Placement of one item in every repetition, computed once and applied to
/// many sketches of the same family (e.g. both endpoints of an edge).
struct L0Placement {
  std::uint64_t index = 0;
  std::vector<L0Hashes::Slot> slots;
};

inline L0Placement place(const L0Hashes& h, std::uint64_t index) {
  L0Placement p;
  p.index = index;
  p.slots.reserve(h.params().reps);
  for (unsigned r = 0; r < h.params().reps; ++r) p.slots.push_back(h.slot(r, index));
  return p;
}

/// Linear ℓ0 sketch over an integer vector indexed by [0, universe).
///
/// Each repetition nests levels 0..L-1 (an item sits in levels 0..t where t
/// is the trailing-zero count of its level hash), and each level splits
/// into buckets of one-sparse recovery cells: (sum of values, sum of
/// value * index, sum of value * z^(index+1) mod 2^61-1).
class L0Sketch {
 public:
  struct Cell {
    std::int64_t count = 0;
    std::uint64_t index_sum = 0;  // wrapping; interpreted as signed
    std::uint64_t fingerprint = 0;

    [[nodiscard]] bool zero() const { return count == 0 && index_sum == 0 && fingerprint == 0; }
    friend bool operator==(const Cell&, const Cell&) = default;
  };

  L0Sketch() = default;
  L0Sketch(std::uint64_t universe, std::uint64_t seed, const L0Params& params = {})
      : L0Sketch(std::make_shared<const L0Hashes>(universe, seed, params)) {}
  explicit L0Sketch(std::shared_ptr<const L0Hashes> hashes)
      : hashes_(std::move(hashes)),
        cells_(static_cast<std::size_t>(hashes_->params().reps) * hashes_->params().levels *
               hashes_->params().buckets) {}

  void update(std::uint64_t index, std::int64_t delta) {
    if (index >= hashes_->universe()) throw std::out_of_range("L0 index outside universe");
    apply(place(*hashes_, index), delta);
  }

  void apply(const L0Placement& p, std::int64_t delta) {
    const auto& prm = hashes_->params();
    const std::uint64_t d_field = mod61::from_signed(delta);
    const std::uint64_t d_index = static_cast<std::uint64_t>(delta) * p.index;
    for (unsigned r = 0; r < prm.reps; ++r) {
      const auto& s = p.slots[r];
      const std::uint64_t fp = mod61::mul(s.fp_term, d_field);
      for (unsigned l = 0; l <= s.top_level; ++l) {
        Cell& c = cells_[cell_of(r, l, s.bucket)];
        c.count += delta;
        c.index_sum += d_index;
        c.fingerprint = mod61::add(c.fingerprint, fp);
      }
    }
  }

  /// True iff the sketched vector is zero (up to a fingerprint collision).
  [[nodiscard]] bool empty() const {
    for (unsigned b = 0; b < hashes_->params().buckets; ++b) {
      if (!cells_[cell_of(0, 0, b)].zero()) return false;
    }
    return true;
  }

  /// Sum of all values (the support size for a 0/1 vector).
  [[nodiscard]] std::int64_t total() const {
    std::int64_t t = 0;
    for (unsigned b = 0; b < hashes_->params().buckets; ++b) t += cells_[cell_of(0, 0, b)].count;
    return t;
  }

  /// Scans repetitions, then levels, then buckets in a fixed order and
  /// returns the first cell that verifies as one-sparse.
  [[nodiscard]] L0Result query() const {
    if (empty()) return {L0Status::Empty, 0, 0};
    const auto& prm = hashes_->params();
    for (unsigned r = 0; r < prm.reps; ++r) {
      for (unsigned l = 0; l < prm.levels; ++l) {
        for (unsigned b = 0; b < prm.buckets; ++b) {
          L0Result res;
          if (decode_cell(r, cells_[cell_of(r, l, b)], res)) return res;
        }
      }
    }
    return {L0Status::Fail, 0, 0};
  }

  /// Every distinct index recoverable from some one-sparse cell, sorted.
  [[nodiscard]] std::vector<std::uint64_t> recover_all() const {
    std::vector<std::uint64_t> out;
    const auto& prm = hashes_->params();
    for (unsigned r = 0; r < prm.reps; ++r) {
      for (unsigned l = 0; l < prm.levels; ++l) {
        for (unsigned b = 0; b < prm.buckets; ++b) {
          L0Result res;
          if (decode_cell(r, cells_[cell_of(r, l, b)], res)) out.push_back(res.index);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  L0Sketch& operator+=(const L0Sketch& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      cells_[i].count += o.cells_[i].count;
      cells_[i].index_sum += o.cells_[i].index_sum;
      cells_[i].fingerprint = mod61::add(cells_[i].fingerprint, o.cells_[i].fingerprint);
    }
    return *this;
  }

  L0Sketch& operator-=(const L0Sketch& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      cells_[i].count -= o.cells_[i].count;
      cells_[i].index_sum -= o.cells_[i].index_sum;
      cells_[i].fingerprint = mod61::sub(cells_[i].fingerprint, o.cells_[i].fingerprint);
    }
    return *this;
  }

  void clear() { std::fill(cells_.begin(), cells_.end(), Cell{}); }

  /// Bit-exact state comparison.
  friend bool operator==(const L0Sketch& a, const L0Sketch& b) {
    return a.hashes_->seed() == b.hashes_->seed() && a.cells_ == b.cells_;
  }

  /// Counter words held (three per cell).
  [[nodiscard]] std::size_t words() const { return 3 * cells_.size(); }
  [[nodiscard]] const L0Hashes& hashes() const { return *hashes_; }
  [[nodiscard]] const std::shared_ptr<const L0Hashes>& shared_hashes() const { return hashes_; }

  void serialize(std::ostream& out) const {
    const auto& prm = hashes_->params();
    binio::put_magic(out, "L0S1");
    binio::put_u32(out, 1);
    binio::put_u64(out, hashes_->universe());
    binio::put_u64(out, hashes_->seed());
    binio::put_u32(out, prm.reps);
    binio::put_u32(out, prm.levels);
    binio::put_u32(out, prm.buckets);
    binio::put_u32(out, prm.independence);
    for (const Cell& c : cells_) {
      binio::put_u64(out, static_cast<std::uint64_t>(c.count));
      binio::put_u64(out, c.index_sum);
      binio::put_u64(out, c.fingerprint);
    }
  }

  static L0Sketch deserialize(std::istream& in) {
    binio::expect_magic(in, "L0S1");
    if (binio::get_u32(in) != 1) throw std::runtime_error("unsupported L0S1 version");
    const std::uint64_t universe = binio::get_u64(in);
    const std::uint64_t seed = binio::get_u64(in);
    L0Params prm;
    prm.reps = binio::get_u32(in);
    prm.levels = binio::get_u32(in);
    prm.buckets = binio::get_u32(in);
    prm.independence = binio::get_u32(in);
    L0Sketch sk(universe, seed, prm);
    for (Cell& c : sk.cells_) {
      c.count = static_cast<std::int64_t>(binio::get_u64(in));
      c.index_sum = binio::get_u64(in);
      c.fingerprint = binio::get_u64(in);
    }
    return sk;
  }

 private:
  [[nodiscard]] std::size_t cell_of(unsigned r, unsigned l, unsigned b) const {
    const auto& prm = hashes_->params();
    return (static_cast<std::size_t>(r) * prm.levels + l) * prm.buckets + b;
  }

  bool decode_cell(unsigned rep, const Cell& c, L0Result& res) const {
    if (c.count == 0) return false;
    const auto s = static_cast<std::int64_t>(c.index_sum);
    if (s % c.count != 0) return false;
    const std::int64_t idx = s / c.count;
    if (idx < 0 || static_cast<std::uint64_t>(idx) >= hashes_->universe()) return false;
    const auto index = static_cast<std::uint64_t>(idx);
    const std::uint64_t expect =
        mod61::mul(mod61::pow(hashes_->fingerprint_base(rep), index + 1), mod61::from_signed(c.count));
    if (expect != c.fingerprint) return false;
    res = {L0Status::Found, index, c.count};
    return true;
  }

  void check_compatible(const L0Sketch& o) const {
    if (hashes_ != o.hashes_ && (hashes_->seed() != o.hashes_->seed() || cells_.size() != o.cells_.size())) {
      throw std::invalid_argument("adding L0 sketches from different families");
    }
  }

  std::shared_ptr<const L0Hashes> hashes_;
  std::vector<Cell> cells_;
};

}  // namespace semistream
