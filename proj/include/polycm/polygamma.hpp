#pragma once

#include "polycm/eval_result.hpp"
#include "polycm/precision.hpp"

namespace polycm {

/// Euler–Mascheroni constant (50 significant digits; double keeps ~17).
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243104215933593992;

/// Order of a derivative of psi; 0 means psi itself.
class PolyOrder {
 public:
  explicit PolyOrder(int n);
  int value() const noexcept { return n_; }

 private:
  int n_;
};

/// psi(x) = -gamma + sum_{k>=0} [1/(k+1) - 1/(k+x)], x > 0.
///
/// The first K terms are summed directly so that the remaining summands start
/// at arguments >= cfg.recurrence_shift_target; the tail is closed by
/// Euler–Maclaurin with the first omitted Bernoulli term as the remainder
/// bound (each 1/(t+a) piece is completely monotone, so that bound is rigorous).
EvalResult digamma(double x, const PrecisionConfig& cfg = {});

/// psi^(n)(x) = (-1)^{n+1} n! sum_{k>=0} (x+k)^{-(n+1)}, n >= 1, x > 0.
EvalResult polygamma(PolyOrder n, double x, const PrecisionConfig& cfg = {});

/// psi^(n) for any n >= 0 (dispatches to digamma at n = 0).
EvalResult psi(PolyOrder n, double x, const PrecisionConfig& cfg = {});

/// Hurwitz zeta sum_{k>=0} (a+k)^{-s} for integer s >= 2 and a > 0.
EvalResult hurwitz_zeta(int s, double a, const PrecisionConfig& cfg = {});

/// psi^(n)(x) from its Laplace representation
/// (-1)^{n+1} int_0^inf t^n e^{-xt} / (1 - e^{-t}) dt, integrated on (0,1] and
/// [1, T] with T chosen so the exponential tail bound is below budget.
EvalResult polygamma_quadrature(PolyOrder n, double x, const PrecisionConfig& cfg = {});

/// |psi^(n-1)(x+1) - psi^(n-1)(x) - (-1)^{n-1}(n-1)!/x^n| from two independent
/// evaluations; n >= 1.
double recurrence_residual(PolyOrder n, double x, const PrecisionConfig& cfg = {});

/// n! as a double (exact up to 22!).
double factorial(int n);

/// B_{2j} / (2j)! for 1 <= j <= kBernoulliTableSize.
inline constexpr int kBernoulliTableSize = 22;
double bernoulli_over_factorial(int j);

}  // namespace polycm
