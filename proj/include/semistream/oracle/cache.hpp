#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

namespace semistream::oracle {

/// JSON file of oracle results keyed by "<generator>|<seed>|<oracle>".
/// Missing or unreadable files start an empty cache; save() rewrites the
/// whole file.
class OracleCache {
 public:
  OracleCache() = default;
  explicit OracleCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    try {
      data_ = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception&) {
      data_ = nlohmann::json::object();
    }
    if (!data_.is_object()) data_ = nlohmann::json::object();
  }

  static std::string key(const std::string& generator, std::uint64_t seed, const std::string& oracle) {
    return generator + "|" + std::to_string(seed) + "|" + oracle;
  }

  [[nodiscard]] std::optional<std::int64_t> get(const std::string& k) const {
    const auto it = data_.find(k);
    if (it == data_.end() || !it->is_number_integer()) return std::nullopt;
    return it->get<std::int64_t>();
  }

  void put(const std::string& k, std::int64_t value) {
    data_[k] = value;
    dirty_ = true;
  }

  /// Cached value, or compute-and-store.
  std::int64_t get_or(const std::string& k, const std::function<std::int64_t()>& compute) {
    if (auto v = get(k)) return *v;
    const std::int64_t v = compute();
    put(k, v);
    return v;
  }

  void save() {
    if (path_.empty() || !dirty_) return;
    std::ofstream out(path_);
    out << data_.dump(1) << '\n';
    dirty_ = false;
  }

  [[nodiscard]] std::size_t size() const { return data_.size(); }

 private:
  std::string path_;
  nlohmann::json data_ = nlohmann::json::object();
  bool dirty_ = false;
};

}  // namespace semistream::oracle
