#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "semistream/harness/stream.hpp"

namespace semistream {

/// Pass counter and word-level space accountant.
///
/// Algorithms register their persistent state with track(); the meter sums
/// the registered word counts at every pass boundary (pass open and pass
/// close) and on explicit checkpoint() calls. Sub-pass transients are not
/// charged. Word conventions: node id = 1, edge = 2, sketch counter = 1.
class Meter {
 public:
  class Account {
   public:
    Account() = default;
    Account(Meter* m, std::uint64_t id) : meter_(m), id_(id) {}
    Account(Account&& o) noexcept : meter_(std::exchange(o.meter_, nullptr)), id_(o.id_) {}
    Account& operator=(Account&& o) noexcept {
      if (this != &o) {
        release();
        meter_ = std::exchange(o.meter_, nullptr);
        id_ = o.id_;
      }
      return *this;
    }
    Account(const Account&) = delete;
    Account& operator=(const Account&) = delete;
    ~Account() { release(); }

    void release() {
      if (meter_ != nullptr) meter_->untrack(id_);
      meter_ = nullptr;
    }

   private:
    Meter* meter_ = nullptr;
    std::uint64_t id_ = 0;
  };

  Meter() = default;
  Meter(const Meter&) = delete;
  Meter& operator=(const Meter&) = delete;

  /// Registers a word-count probe; charged until the Account is destroyed.
  [[nodiscard]] Account track(std::string label, std::function<std::size_t()> words) {
    const auto id = next_id_++;
    probes_.emplace(id, Probe{std::move(label), std::move(words)});
    return Account(this, id);
  }

  /// Advisory by default; strict mode throws BudgetExceeded at the first
  /// boundary where the charged words exceed the budget.
  void set_budget(std::size_t words, bool strict) {
    budget_ = words;
    strict_ = strict;
  }

  void begin_pass() {
    if (pass_open_) throw std::logic_error("a pass is already open on this meter");
    pass_open_ = true;
    charge();
  }

  void end_pass() {
    end_pass_noexcept();
    enforce();
  }

  /// Closes the pass and charges without enforcing (destructor path).
  void end_pass_noexcept() noexcept {
    if (!pass_open_) return;
    pass_open_ = false;
    ++passes_;
    charge();
  }

  void checkpoint() {
    charge();
    enforce();
  }

  /// Named event counters (e.g. MaximalPaths stage-1 iterations).
  void count(const std::string& name, std::uint64_t delta = 1) { counters_[name] += delta; }

  [[nodiscard]] std::uint64_t counter(const std::string& name) const {
    const auto it = counters_.find(name);
    return it == counters_.end() ? 0 : it->second;
  }
  [[nodiscard]] const std::map<std::string, std::uint64_t>& counters() const { return counters_; }

  [[nodiscard]] std::uint64_t passes() const { return passes_; }
  [[nodiscard]] std::size_t words_current() const { return words_current_; }
  [[nodiscard]] std::size_t words_peak() const { return words_peak_; }
  [[nodiscard]] bool pass_open() const { return pass_open_; }
  [[nodiscard]] std::optional<std::size_t> budget() const { return budget_; }
  [[nodiscard]] bool strict() const { return strict_; }
  [[nodiscard]] bool over_budget() const { return over_budget_; }

  /// Peak words charged per label, for reports.
  [[nodiscard]] const std::map<std::string, std::size_t>& label_peaks() const { return label_peaks_; }

 private:
  struct Probe {
    std::string label;
    std::function<std::size_t()> words;
  };

  void untrack(std::uint64_t id) noexcept { probes_.erase(id); }

  void charge() noexcept {
    std::size_t total = 0;
    for (const auto& [id, p] : probes_) {
      const std::size_t w = p.words();
      total += w;
      auto& lp = label_peaks_[p.label];
      lp = std::max(lp, w);
    }
    words_current_ = total;
    words_peak_ = std::max(words_peak_, total);
    if (budget_ && total > *budget_) over_budget_ = true;
  }

  void enforce() const {
    if (strict_ && over_budget_) {
      throw BudgetExceeded("space budget of " + std::to_string(*budget_) + " words exceeded (peak " +
                           std::to_string(words_peak_) + ")");
    }
  }

  std::map<std::uint64_t, Probe> probes_;
  std::map<std::string, std::size_t> label_peaks_;
  std::map<std::string, std::uint64_t> counters_;
  std::uint64_t next_id_ = 1;
  std::uint64_t passes_ = 0;
  std::size_t words_current_ = 0;
  std::size_t words_peak_ = 0;
  std::optional<std::size_t> budget_;
  bool strict_ = false;
  bool over_budget_ = false;
  bool pass_open_ = false;
};

/// One sequential traversal of a stream.
///
/// The pass is counted when iteration reaches the end (or when the reader
/// is destroyed early). Opening a second reader on the same meter while
/// this one is unfinished throws std::logic_error.
class PassReader {
 public:
  PassReader(const GraphStream& s, Meter& m) : stream_(&s), meter_(&m) { meter_->begin_pass(); }
  PassReader(const PassReader&) = delete;
  PassReader& operator=(const PassReader&) = delete;
  ~PassReader() {
    if (!finished_) meter_->end_pass_noexcept();
  }

  struct Sentinel {};

  class Iterator {
   public:
    using value_type = EdgeUpdate;
    using difference_type = std::ptrdiff_t;

    Iterator() = default;
    Iterator(PassReader* r, const std::vector<EdgeUpdate>* ups) : reader_(r), ups_(ups) {}

    const EdgeUpdate& operator*() const { return (*ups_)[pos_]; }
    const EdgeUpdate* operator->() const { return &(*ups_)[pos_]; }
    Iterator& operator++() {
      ++pos_;
      return *this;
    }
    void operator++(int) { ++pos_; }

    // Reaching the end closes the pass, so range-for over an empty stream
    // still counts one traversal.
    friend bool operator==(const Iterator& it, Sentinel) {
      if (it.pos_ < it.ups_->size()) return false;
      it.reader_->finish();
      return true;
    }

   private:
    PassReader* reader_ = nullptr;
    const std::vector<EdgeUpdate>* ups_ = nullptr;
    std::size_t pos_ = 0;
  };

  Iterator begin() { return Iterator(this, &stream_->updates_unmetered()); }
  Sentinel end() { return {}; }

  void finish() {
    if (finished_) return;
    finished_ = true;
    meter_->end_pass();
  }

  [[nodiscard]] bool finished() const { return finished_; }

 private:
  const GraphStream* stream_;
  Meter* meter_;
  bool finished_ = false;
};

/// Runs `f(update)` over one full metered pass.
template <class F>
void stream_pass(const GraphStream& s, Meter& m, F&& f) {
  PassReader reader(s, m);
  for (const EdgeUpdate& up : reader) f(up);
}

}  // namespace semistream
