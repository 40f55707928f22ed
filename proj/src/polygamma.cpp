#include "polycm/polygamma.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "polycm/errors.hpp"
#include "polycm/kernels.hpp"
#include "polycm/quadrature.hpp"
#include "polycm/summation.hpp"

namespace polycm {

namespace {

constexpr double u = kUnitRoundoff;

// Even-index Bernoulli numbers B_2 .. B_44.
constexpr std::array<double, kBernoulliTableSize> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
    1520097643918070802691.0 / 1806.0,
    -27833269579301024235023.0 / 690.0,
};

void require_positive_finite(double x, const char* what) {
  if (!(x > 0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// Euler–Maclaurin corrections for f(t) = t^{-s} summed from t = y:
//   sum_j B_2j/(2j)! (s)_{2j-1} y^{-s-2j+1}.
struct EmCorrections {
  double sum = 0.0;
  double remainder_bound = 0.0;  // |first omitted term|
  double rounding = 0.0;
};

EmCorrections em_corrections(int s, double y, double tol) {
  EmCorrections out;
  double rising = s;                     // (s)_{2j-1}
  double ypow = std::pow(y, -(s + 1));  // y^{-s-2j+1}
  const double inv_y2 = 1.0 / (y * y);
  double previous = INFINITY;
  for (int j = 1; j <= kBernoulliTableSize; ++j) {
    const double term = bernoulli_over_factorial(j) * rising * ypow;
    const double mag = std::abs(term);
    if (mag <= tol || mag >= previous || j == kBernoulliTableSize) {
      out.remainder_bound = mag;
      return out;
    }
    out.sum += term;
    out.rounding += (2.0 * s + 4 * j + 8) * u * mag;
    previous = mag;
    rising *= (s + 2.0 * j - 1) * (s + 2.0 * j);
    ypow *= inv_y2;
  }
  return out;
}

int shift_count(double x, double y_min, const PrecisionConfig& cfg, const char* what) {
  const double k = std::max(0.0, std::ceil(y_min - x));
  if (k > cfg.max_series_terms) {
    throw ConvergenceError(std::string(what) + ": recurrence shift exceeds max_series_terms",
                           INFINITY);
  }
  return static_cast<int>(k);
}

void check_budget(const EvalResult& r, const PrecisionConfig& cfg, const char* what) {
  if (!std::isfinite(r.value)) {
    throw RangeError(std::string(what) + ": value not representable in double");
  }
  if (!(r.abs_error <= cfg.budget_for(r.value))) {
    throw ConvergenceError(std::string(what) + ": error budget not reached", r.abs_error);
  }
}

}  // namespace

PolyOrder::PolyOrder(int n) : n_(n) {
  if (n < 0) {
    throw DomainError("PolyOrder must be non-negative, got " + std::to_string(n));
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}

double bernoulli_over_factorial(int j) {
  if (j < 1 || j > kBernoulliTableSize) {
    throw DomainError("bernoulli_over_factorial: index out of table range");
  }
  return kBernoulli[j - 1] / factorial(2 * j);
}

EvalResult hurwitz_zeta(int s, double a, const PrecisionConfig& cfg) {
  cfg.validate();
  require_positive_finite(a, "hurwitz_zeta");
  if (s < 2) {
    throw DomainError("hurwitz_zeta: s must be >= 2");
  }
  const double y_min = std::max(cfg.recurrence_shift_target, s + 8.0);
  const int K = shift_count(a, y_min, cfg, "hurwitz_zeta");

  CompensatedSum sum;
  for (int k = 0; k < K; ++k) {
    const double term = std::pow(a + k, -s);
    sum.add(term, (s + 2) * u * term);
  }

  const double y = a + K;
  const double leading = std::pow(y, 1 - s) / (s - 1);
  const double half = 0.5 * std::pow(y, -s);
  const EmCorrections em = em_corrections(s, y, 0.25 * u * leading);
  const double tail = leading + half + em.sum;
  // y itself carries one rounding, amplified by at most s in every tail term.
  sum.add(tail, (s + 4) * u * (leading + half) + em.rounding + em.remainder_bound);

  EvalResult r = sum.result();
  if (!std::isfinite(r.value)) {
    throw RangeError("hurwitz_zeta: value not representable in double");
  }
  return r;
}

EvalResult polygamma(PolyOrder order, double x, const PrecisionConfig& cfg) {
  const int n = order.value();
  if (n < 1) {
    throw DomainError("polygamma: order must be >= 1 (use digamma for n = 0)");
  }
  require_positive_finite(x, "polygamma");
  const EvalResult zeta = hurwitz_zeta(n + 1, x, cfg);
  const double nfact = factorial(n);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  const double value = sign * nfact * zeta.value;
  const double e = nfact * zeta.abs_error + (n + 2) * u * std::abs(value);
  const EvalResult r{value, round_up_bound(e)};
  check_budget(r, cfg, "polygamma");
  return r;
}

EvalResult digamma(double x, const PrecisionConfig& cfg) {
  cfg.validate();
  require_positive_finite(x, "digamma");
  const double y_min = std::max(cfg.recurrence_shift_target, 10.0);
  const int K = shift_count(std::min(1.0, x), y_min, cfg, "digamma");

  CompensatedSum sum;
  sum.add(-kEulerGamma, u * kEulerGamma);
  for (int k = 0; k < K; ++k) {
    const double a = 1.0 / (k + 1.0);
    const double b = 1.0 / (k + x);
    sum.add(a, u * a);
    sum.add(-b, 2 * u * b);
  }

  // Tail from t = K of g(t) = 1/(t+1) - 1/(t+x).
  const double y1 = K + 1.0;
  const double yx = K + x;
  const double z = (x - 1.0) / y1;
  const double integral = std::log1p(z);
  sum.add(integral, 4 * u * (std::abs(integral) + std::abs(z) / (1.0 + z)));
  const double half = 0.5 * (1.0 / y1 - 1.0 / yx);
  sum.add(half, 2 * u * (0.5 / y1 + 0.5 / yx));

  const double tol = 0.25 * u * std::max(1.0, std::abs(integral));
  const EmCorrections em1 = em_corrections(1, y1, tol);
  const EmCorrections emx = em_corrections(1, yx, tol);
  sum.add(em1.sum, em1.rounding + em1.remainder_bound);
  sum.add(-emx.sum, emx.rounding + emx.remainder_bound + 3 * u * std::abs(emx.sum));

  const EvalResult r = sum.result();
  check_budget(r, cfg, "digamma");
  return r;
}

EvalResult psi(PolyOrder n, double x, const PrecisionConfig& cfg) {
  return n.value() == 0 ? digamma(x, cfg) : polygamma(n, x, cfg);
}

EvalResult polygamma_quadrature(PolyOrder order, double x, const PrecisionConfig& cfg) {
  cfg.validate();
  const int n = order.value();
  if (n < 1) {
    throw DomainError("polygamma_quadrature: order must be >= 1");
  }
  require_positive_finite(x, "polygamma_quadrature");

  // The integral exceeds n!/x^{n+1} because 1/(1 - e^{-t}) > 1.
  const double lower_estimate = factorial(n) / std::pow(x, n + 1);
  const double budget = std::max(cfg.target_abs_error, cfg.target_rel_error * lower_estimate);

  const auto integrand = [n, x](double t) {
    return std::pow(t, n) * kappa(t).value * std::exp(-x * t);
  };

  // kappa(t) <= kappa(1) for t >= 1, so the tail is bounded by kappa(1) times the
  // t^n e^{-xt} tail.
  const double kappa_one = kappa(1.0).value;
  const double truncation_tol = 0.01 * std::min(budget, kUnitRoundoff * lower_estimate);
  const double T = std::max(2.0, power_exp_truncation(n, x, truncation_tol / kappa_one));
  const double tail_bound = kappa_one * power_exp_tail_bound(n, x, T);

  QuadratureOptions opts;
  opts.rel_tol = std::max(1e-13, 0.1 * cfg.target_rel_error);
  // The integrand varies on the scale 1/x, so besides the split at t = 1 the
  // range is cut at 1/x, 2/x, 4/x, ... to keep each panel smooth.
  std::vector<double> cuts = {0.0, 1.0, T};
  for (double c = 1.0 / x; c < T; c *= 2) {
    cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  EvalResult total = exact(0.0);
  for (std::size_t i = 0; i + 1 < cuts.size() && cuts[i] < T; ++i) {
    total = total + integrate(integrand, cuts[i], cuts[i + 1], opts);
  }
  total.abs_error = round_up_bound(total.abs_error + tail_bound);
  // The truncated tail is positive; centre the estimate on the half-tail.
  total.value += 0.5 * tail_bound;

  if (n % 2 == 0) {
    total = -total;
  }
  if (!(total.abs_error <= std::max(budget, cfg.budget_for(total.value)))) {
    throw ConvergenceError("polygamma_quadrature: error budget not reached", total.abs_error);
  }
  return total;
}

double recurrence_residual(PolyOrder order, double x, const PrecisionConfig& cfg) {
  const int n = order.value();
  if (n < 1) {
    throw DomainError("recurrence_residual: order must be >= 1");
  }
  require_positive_finite(x, "recurrence_residual");
  const PolyOrder lower(n - 1);
  const EvalResult shifted = psi(lower, x + 1.0, cfg);
  const EvalResult base = psi(lower, x, cfg);
  const double sign = ((n - 1) % 2 == 0) ? 1.0 : -1.0;
  const double correction = sign * factorial(n - 1) / std::pow(x, n);
  return std::abs(shifted.value - base.value - correction);
}

}  // namespace polycm
