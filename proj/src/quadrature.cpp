#include "polycm/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>

#include "polycm/errors.hpp"

namespace polycm {

EvalResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureOptions& opts) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, opts.max_depth, opts.rel_tol, &error, &l1);
  if (!std::isfinite(value) || !std::isfinite(error)) {
    throw ConvergenceError("quadrature produced a non-finite result", error);
  }
  const double bound = error + (opts.integrand_rel_error + 4 * kUnitRoundoff) * l1;
  return {value, round_up_bound(bound)};
}

double power_exp_tail_bound(double p, double x, double T) {
  if (!(x > 0) || !(T > 0)) {
    throw DomainError("power_exp_tail_bound: x and T must be positive");
  }
  // t^p e^{-xt} <= T^p e^{-xT} e^{-(x - p/T)(t - T)} for t >= T when p > 0.
  const double rate = p > 0 ? x - p / T : x;
  if (!(rate > 0)) {
    throw DomainError("power_exp_tail_bound: T must exceed p / x");
  }
  return std::exp(p * std::log(T) - x * T) / rate;
}

double power_exp_truncation(double p, double x, double tol) {
  double T = std::max(1.0, p > 0 ? 2 * p / x : 1.0 / x);
  for (int i = 0; i < 400; ++i) {
    if (power_exp_tail_bound(p, x, T) <= tol) {
      return T;
    }
    T *= 1.125;
  }
  throw ConvergenceError("power_exp_truncation: tail bound never met tolerance",
                         power_exp_tail_bound(p, x, T));
}

}  // namespace polycm
