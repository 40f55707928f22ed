#pragma once

#include <cmath>
#include <limits>

namespace polycm {

/// Unit roundoff of double.
inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

/// A floating value paired with a guaranteed bound on its absolute error.
///
/// Arithmetic on EvalResult propagates the bound to first order (products) or
/// exactly (sums), and always adds the rounding of the operation itself.
struct EvalResult {
  double value = 0.0;
  double abs_error = 0.0;

  /// True when the sign of `value` is certified: |value| > factor * abs_error.
  bool certified(double factor = 1.0) const { return std::abs(value) > factor * abs_error; }
  bool certified_positive(double factor = 1.0) const { return value > factor * abs_error; }
  bool certified_negative(double factor = 1.0) const { return -value > factor * abs_error; }

  /// Interval [value - abs_error, value + abs_error].
  double lower() const { return value - abs_error; }
  double upper() const { return value + abs_error; }
};

/// Exactly representable constant.
inline EvalResult exact(double v) { return {v, 0.0}; }

/// Round an error bound up so that accumulated rounding in the bound itself
/// cannot make it optimistic.
inline double round_up_bound(double e) { return e * (1.0 + 8 * kUnitRoundoff); }

EvalResult operator+(const EvalResult& a, const EvalResult& b);
EvalResult operator-(const EvalResult& a, const EvalResult& b);
EvalResult operator-(const EvalResult& a);
EvalResult operator*(const EvalResult& a, const EvalResult& b);
EvalResult operator*(double exact_scale, const EvalResult& a);
EvalResult operator/(const EvalResult& a, const EvalResult& b);

/// a * a with the tighter error |2a|δ + δ².
EvalResult square(const EvalResult& a);

/// True when the two intervals overlap, i.e. the values agree within the
/// combined bounds.
inline bool agree(const EvalResult& a, const EvalResult& b) {
  return std::abs(a.value - b.value) <= a.abs_error + b.abs_error;
}

}  // namespace polycm
