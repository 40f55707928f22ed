#pragma once

#include <optional>
#include <span>
#include <vector>

#include "polycm/eval_result.hpp"
#include "polycm/precision.hpp"

namespace polycm {

/// One evaluation of lower < middle < upper. For k = 0 the middle is psi(x)
/// between ln x - 1/x and ln x - 1/(2x); for k >= 1 it is |psi^(k)(x)| between
/// (k-1)!/x^k + k!/(2x^{k+1}) and (k-1)!/x^k + k!/x^{k+1}.
struct InequalityResult {
  int k = 0;
  double x = 0.0;
  double lower = 0.0;
  EvalResult middle;
  double upper = 0.0;
  double lower_margin = 0.0;  // middle - lower
  double upper_margin = 0.0;  // upper - middle
  /// middle.abs_error plus the rounding of the bound expressions.
  double margin_error = 0.0;
  /// Both margins exceed 2 * margin_error.
  bool passed = false;
  /// A margin is negative beyond its error: the inequality is refuted.
  bool failed = false;
};

InequalityResult psi_log_bounds_check(double x, const PrecisionConfig& cfg = {});
InequalityResult polygamma_bounds_check(int k, double x, const PrecisionConfig& cfg = {});

struct BoundsSummary {
  std::vector<InequalityResult> psi_results;        // one per grid point
  std::vector<InequalityResult> polygamma_results;  // k-major, k = 1..k_max
  std::size_t failures = 0;
  std::vector<InequalityResult> inconclusive;  // neither passed nor failed
  std::optional<double> min_lower_margin;
  std::optional<double> min_upper_margin;
  /// Whether the k = 0 lower margin shrinks along the grid for x >= 1. Logged
  /// only; the bound is asymptotically tight so this is expected but not required.
  bool psi_lower_margin_shrinks = true;

  std::size_t size() const { return psi_results.size() + polygamma_results.size(); }
  bool all_passed() const { return failures == 0 && inconclusive.empty(); }
};

BoundsSummary bounds_suite(int k_max, std::span<const double> grid, const PrecisionConfig& cfg = {});

}  // namespace polycm
