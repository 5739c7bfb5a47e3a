#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace semistream::bench {

/// What the space formula of an algorithm depends on.
struct BudgetParams {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t p = 0;
  std::size_t terminals = 0;
  bool turnstile = false;
};

/// Strict-mode word budgets: constant * base, where base is the space bound
/// of the algorithm with L = ceil(log2 n) standing in for the polylog. The
/// turnstile variants carry L^2 more, for the l0 sampler levels and
/// repetitions. Constants are about 4x the largest ratio measured on
/// G(n, d/n) for n up to 800 and d in {3, 20}, paths, stars, K40 and a
/// 4-regular graph, with CLI defaults (turnstile runs up to n = 300).
struct BudgetRule {
  double c_insertion;
  double c_turnstile;
};

namespace detail {

inline double budget_log(std::size_t n) {
  double l = 1;
  while (std::pow(2.0, l) < static_cast<double>(n)) l += 1;
  return l;
}

}  // namespace detail

inline std::optional<BudgetRule> budget_rule(std::string_view alg) {
  if (alg == "bfs-det") return BudgetRule{4, 0};
  if (alg == "bfs-rand" || alg == "diameter" || alg == "steiner") return BudgetRule{2, 3};
  if (alg == "cert") return BudgetRule{16, 400};
  if (alg == "mlst" || alg == "sparsifier" || alg == "max-cut") return BudgetRule{1, 40};
  if (alg == "dfs-simple") return BudgetRule{16, 80};
  if (alg == "dfs-aa") return BudgetRule{4, 40};
  return std::nullopt;
}

/// Base of the formula, before the constant. Unknown algorithms give 0.
inline double budget_base(std::string_view alg, const BudgetParams& q) {
  const double n = static_cast<double>(q.n);
  const double L = detail::budget_log(q.n);
  const double T = q.turnstile ? L * L : 1.0;
  const double k = static_cast<double>(q.k);
  const double s = static_cast<double>(q.s);
  if (alg == "bfs-det") {
    const double p = static_cast<double>(q.p == 0 ? 1 : q.p);
    return n * std::ceil(n / p) + n * L;
  }
  if (alg == "bfs-rand" || alg == "diameter") return (n + k * k) * L * T;
  if (alg == "steiner") return (static_cast<double>(q.terminals + 1) * n + k * k) * L * T;
  if (alg == "cert") return q.turnstile ? s * (s + L) * n * L * L : s * n;
  if (alg == "mlst" || alg == "sparsifier" || alg == "max-cut") return (k + 1) * n * T;
  if (alg == "dfs-simple") return q.turnstile ? (k + 1) * (k + 1 + L) * n * L * L : (k + 1) * n;
  if (alg == "dfs-aa") return q.turnstile ? k * (k + L) * n * L * L : (s + k) * n;
  return 0;
}

/// Budget in words, or nullopt when the algorithm has no calibrated rule.
inline std::optional<std::size_t> space_budget(std::string_view alg, const BudgetParams& q) {
  const auto rule = budget_rule(alg);
  if (!rule) return std::nullopt;
  const double c = q.turnstile ? rule->c_turnstile : rule->c_insertion;
  if (c == 0) return std::nullopt;
  return static_cast<std::size_t>(std::ceil(c * budget_base(alg, q)));
}

}  // namespace semistream::bench
