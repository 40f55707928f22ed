#include "polycm/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "polycm/errors.hpp"
#include "polycm/polygamma.hpp"

namespace polycm {

namespace {

constexpr double u = kUnitRoundoff;

void finish(InequalityResult& r) {
  r.lower_margin = r.middle.value - r.lower;
  r.upper_margin = r.upper - r.middle.value;
  r.passed = r.lower_margin > 2 * r.margin_error && r.upper_margin > 2 * r.margin_error;
  r.failed = r.lower_margin < -r.margin_error || r.upper_margin < -r.margin_error;
}

}  // namespace

InequalityResult psi_log_bounds_check(double x, const PrecisionConfig& cfg) {
  if (!(x > 0)) {
    throw DomainError("psi_log_bounds_check: x must be positive");
  }
  InequalityResult r;
  r.k = 0;
  r.x = x;
  const double log_x = std::log(x);
  const double inv_x = 1.0 / x;
  r.lower = log_x - inv_x;
  r.upper = log_x - 0.5 * inv_x;
  r.middle = digamma(x, cfg);
  const double bound_rounding = 3 * u * (std::abs(log_x) + inv_x);
  r.margin_error = round_up_bound(r.middle.abs_error + bound_rounding);
  finish(r);
  return r;
}

InequalityResult polygamma_bounds_check(int k, double x, const PrecisionConfig& cfg) {
  if (k < 1) {
    throw DomainError("polygamma_bounds_check: k must be >= 1");
  }
  if (!(x > 0)) {
    throw DomainError("polygamma_bounds_check: x must be positive");
  }
  InequalityResult r;
  r.k = k;
  r.x = x;
  const double lead = factorial(k - 1) / std::pow(x, k);
  const double next = factorial(k) / std::pow(x, k + 1);
  r.lower = lead + 0.5 * next;
  r.upper = lead + next;
  const EvalResult value = polygamma(PolyOrder(k), x, cfg);
  r.middle = {std::abs(value.value), value.abs_error};
  const double bound_rounding = (k + 6) * u * (lead + next);
  r.margin_error = round_up_bound(r.middle.abs_error + bound_rounding);
  finish(r);
  return r;
}

BoundsSummary bounds_suite(int k_max, std::span<const double> grid, const PrecisionConfig& cfg) {
  if (k_max < 1) {
    throw DomainError("bounds_suite: k_max must be >= 1");
  }
  BoundsSummary summary;
  const auto record = [&](const InequalityResult& r) {
    if (r.failed) {
      ++summary.failures;
    } else if (!r.passed) {
      summary.inconclusive.push_back(r);
    }
    summary.min_lower_margin = std::min(summary.min_lower_margin.value_or(INFINITY), r.lower_margin);
    summary.min_upper_margin = std::min(summary.min_upper_margin.value_or(INFINITY), r.upper_margin);
  };

  std::optional<double> previous_margin;
  for (double x : grid) {
    const InequalityResult r = psi_log_bounds_check(x, cfg);
    record(r);
    if (x >= 1) {
      if (previous_margin && !(r.lower_margin < *previous_margin)) {
        summary.psi_lower_margin_shrinks = false;
      }
      previous_margin = r.lower_margin;
    }
    summary.psi_results.push_back(r);
  }
  for (int k = 1; k <= k_max; ++k) {
    for (double x : grid) {
      const InequalityResult r = polygamma_bounds_check(k, x, cfg);
      record(r);
      summary.polygamma_results.push_back(r);
    }
  }
  return summary;
}

}  // namespace polycm
