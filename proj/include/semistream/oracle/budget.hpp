#pragma once

#include <cstddef>
#include <string>

#include "semistream/core/types.hpp"

namespace semistream::oracle {

/// Size caps for the exponential oracles. Callers that knowingly go past a
/// default (e.g. structured gadgets where the search is fast) raise the
/// cap explicitly.
struct OracleBudget {
  std::size_t max_cds_nodes = 20;
  std::size_t max_steiner_terminals = 8;
  std::size_t max_cut_nodes = 16;
};

inline void require_within(std::size_t value, std::size_t cap, const char* what) {
  if (value > cap) {
    throw OracleBudgetExceeded(std::string(what) + ": size " + std::to_string(value) + " exceeds oracle cap " +
                               std::to_string(cap));
  }
}

}  // namespace semistream::oracle
