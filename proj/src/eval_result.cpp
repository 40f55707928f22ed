#include "polycm/eval_result.hpp"

#include <algorithm>
#include <cmath>

#include "polycm/errors.hpp"
#include "polycm/precision.hpp"

namespace polycm {

namespace {
constexpr double u = kUnitRoundoff;
}

EvalResult operator+(const EvalResult& a, const EvalResult& b) {
  const double v = a.value + b.value;
  return {v, round_up_bound(a.abs_error + b.abs_error + u * std::abs(v))};
}

EvalResult operator-(const EvalResult& a, const EvalResult& b) {
  const double v = a.value - b.value;
  return {v, round_up_bound(a.abs_error + b.abs_error + u * std::abs(v))};
}

EvalResult operator-(const EvalResult& a) { return {-a.value, a.abs_error}; }

EvalResult operator*(const EvalResult& a, const EvalResult& b) {
  const double v = a.value * b.value;
  const double e = std::abs(a.value) * b.abs_error + std::abs(b.value) * a.abs_error +
                   a.abs_error * b.abs_error + u * std::abs(v);
  return {v, round_up_bound(e)};
}

EvalResult operator*(double exact_scale, const EvalResult& a) {
  const double v = exact_scale * a.value;
  return {v, round_up_bound(std::abs(exact_scale) * a.abs_error + u * std::abs(v))};
}

EvalResult operator/(const EvalResult& a, const EvalResult& b) {
  if (b.abs_error >= std::abs(b.value)) {
    throw RangeError("division by an interval containing zero");
  }
  const double v = a.value / b.value;
  // |a/b - (a+da)/(b+db)| <= (|da| + |v||db|) / (|b| - |db|)
  const double e = (a.abs_error + std::abs(v) * b.abs_error) / (std::abs(b.value) - b.abs_error) +
                   u * std::abs(v);
  return {v, round_up_bound(e)};
}

EvalResult square(const EvalResult& a) {
  const double v = a.value * a.value;
  const double e = 2 * std::abs(a.value) * a.abs_error + a.abs_error * a.abs_error + u * v;
  return {v, round_up_bound(e)};
}

void PrecisionConfig::validate() const {
  if (!(target_abs_error > 0) || !std::isfinite(target_abs_error)) {
    throw DomainError("PrecisionConfig: target_abs_error must be positive and finite");
  }
  if (!(target_rel_error >= 0) || !std::isfinite(target_rel_error)) {
    throw DomainError("PrecisionConfig: target_rel_error must be non-negative and finite");
  }
  if (max_series_terms < 1) {
    throw DomainError("PrecisionConfig: max_series_terms must be positive");
  }
  if (!(recurrence_shift_target >= 1.0) || !std::isfinite(recurrence_shift_target)) {
    throw DomainError("PrecisionConfig: recurrence_shift_target must be >= 1");
  }
  if (max_polygamma_order < 1) {
    throw DomainError("PrecisionConfig: max_polygamma_order must be positive");
  }
}

double PrecisionConfig::budget_for(double value) const {
  return std::max(target_abs_error, target_rel_error * std::abs(value));
}

}  // namespace polycm
