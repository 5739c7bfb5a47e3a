#pragma once

#include <string>

#include <json.hpp>

#include "semistream/core/tree.hpp"
#include "semistream/harness/meter.hpp"

namespace semistream {

/// Meter sidecar, schema "meter/v1".
inline nlohmann::ordered_json meter_json(const Meter& m, const std::string& algorithm,
                                         const nlohmann::ordered_json& params) {
  nlohmann::ordered_json j;
  j["schema"] = "meter/v1";
  j["algorithm"] = algorithm;
  j["params"] = params;
  j["passes"] = m.passes();
  j["words_peak"] = m.words_peak();
  if (m.budget()) {
    j["budget_words"] = *m.budget();
    j["strict"] = m.strict();
    j["over_budget"] = m.over_budget();
  }
  if (!m.counters().empty()) j["counters"] = m.counters();
  if (!m.label_peaks().empty()) j["words_by_label"] = m.label_peaks();
  return j;
}

inline nlohmann::ordered_json tree_json(const RootedTree& t) {
  nlohmann::ordered_json j;
  j["root"] = t.root();
  nlohmann::ordered_json parents = nlohmann::ordered_json::array();
  for (NodeId p : t.parents()) {
    if (p == kNoNode) {
      parents.push_back(nullptr);
    } else {
      parents.push_back(p);
    }
  }
  j["parent"] = std::move(parents);
  j["leaves"] = t.leaf_count();
  j["height"] = t.height();
  return j;
}

}  // namespace semistream
