#pragma once

#include <functional>

#include "polycm/eval_result.hpp"

namespace polycm {

struct QuadratureOptions {
  double rel_tol = 1e-13;
  unsigned max_depth = 15;
  /// Relative error of each integrand evaluation; enters the bound as
  /// integrand_rel_error * integral of |f|.
  double integrand_rel_error = 16 * kUnitRoundoff;
};

/// Adaptive 15-point Gauss–Kronrod on the finite interval [a, b]. The returned
/// abs_error combines the Kronrod–Gauss estimate with integrand rounding.
EvalResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureOptions& opts = {});

/// Bound on the tail integral of t^p e^{-x t} over [T, inf).
/// Requires x > 0 and, when p > 0, T > p / x.
double power_exp_tail_bound(double p, double x, double T);

/// Smallest T (on a geometric ladder starting near max(1, 2p/x)) at which
/// power_exp_tail_bound(p, x, T) <= tol.
double power_exp_truncation(double p, double x, double tol);

}  // namespace polycm
