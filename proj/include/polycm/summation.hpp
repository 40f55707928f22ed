#pragma once

#include <cmath>
#include <cstddef>

#include "polycm/eval_result.hpp"

namespace polycm {

/// Neumaier-compensated summation that also tracks a rigorous bound on the
/// rounding error and on the propagated error of the summands.
class CompensatedSum {
 public:
  void add(double term, double term_abs_error = 0.0) {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
    abs_total_ += std::abs(term);
    propagated_ += term_abs_error;
    ++count_;
  }

  void add(const EvalResult& r) { add(r.value, r.abs_error); }

  double value() const { return sum_ + compensation_; }

  /// (2u + 4 n u^2) * sum |terms| bounds the compensated rounding error.
  double rounding_bound() const {
    const double n = static_cast<double>(count_);
    return (2 * kUnitRoundoff + 4 * n * kUnitRoundoff * kUnitRoundoff) * abs_total_;
  }

  double abs_total() const { return abs_total_; }
  std::size_t count() const { return count_; }

  EvalResult result() const {
    return {value(), round_up_bound(rounding_bound() + propagated_)};
  }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
  double abs_total_ = 0.0;
  double propagated_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace polycm
