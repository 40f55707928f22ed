#include "polycm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polycm/errors.hpp"
#include "polycm/polygamma.hpp"
#include "polycm/quadrature.hpp"

namespace polycm {

namespace {

constexpr double u = kUnitRoundoff;

void require_positive(double t, const char* what) {
  if (!(t > 0) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + ": argument must be positive and finite");
  }
}

// (1/2) coth(t/2) = 1/(1 - e^{-t}) - 1/2. Small-t series:
// 1/t + t/12 - t^3/720 + t^5/30240 - t^7/1209600 + ...
EvalResult half_coth_half(double t) {
  if (t < kSmallArgumentSwitch) {
    const double t2 = t * t;
    const double v = 1.0 / t + t * (1.0 / 12 + t2 * (-1.0 / 720 + t2 / 30240));
    const double truncation = t2 * t2 * t2 * t / 1209600;
    return {v, round_up_bound(4 * u * v + truncation)};
  }
  const double v = 0.5 / std::tanh(0.5 * t);
  return {v, round_up_bound(4 * u * v)};
}

// kernel(t) minus the lower end of its claimed range. Where the kernel tends
// to that end at large t (kappa -> 1, h_0 -> 1/2) the excess 1/(e^t - 1) is
// evaluated directly, since kernel(t) itself rounds to the limit long before
// the excess underflows. For h_{-1} the excess is the tanh kernel.
EvalResult range_excess(const KernelId& kernel, const EvalResult& value, double t, double lower) {
  const bool excess_is_bose = kernel.kind == KernelId::Kind::Kappa ||
                              (kernel.kind == KernelId::Kind::H && kernel.k == 0);
  if (excess_is_bose) {
    const double v = 1.0 / std::expm1(t);
    return {v, round_up_bound(3 * u * v)};
  }
  if (kernel.kind == KernelId::Kind::H && kernel.k == -1) {
    return tanh_kernel(t);
  }
  const double v = value.value - lower;
  return {v, round_up_bound(value.abs_error + u * std::abs(v))};
}

}  // namespace

EvalResult kappa(double t) {
  require_positive(t, "kappa");
  if (t < kSmallArgumentSwitch) {
    EvalResult c = half_coth_half(t);
    c.value += 0.5;
    c.abs_error = round_up_bound(c.abs_error + u * c.value);
    return c;
  }
  const double v = 1.0 / -std::expm1(-t);
  return {v, round_up_bound(3 * u * v)};
}

EvalResult h_kernel(int k, double t) {
  require_positive(t, "h_kernel");
  const EvalResult c = half_coth_half(t);
  const double scale = std::pow(t, -k);
  const double v = c.value * scale;
  if (!std::isfinite(v)) {
    throw RangeError("h_kernel: value not representable in double");
  }
  const double e = c.abs_error * scale + (std::abs(k) + 3) * u * v;
  return {v, round_up_bound(e)};
}

EvalResult omega(double t) {
  require_positive(t, "omega");
  if (t < kSmallArgumentSwitch) {
    // t / sinh t = 1 - t^2/6 + 7t^4/360 - 31t^6/15120 + 127t^8/604800 - ...
    const double t2 = t * t;
    const double v = -(1.0 + t2 * (-1.0 / 6 + t2 * (7.0 / 360 - t2 * 31.0 / 15120)));
    const double truncation = 127.0 * t2 * t2 * t2 * t2 / 604800;
    return {v, round_up_bound(4 * u * std::abs(v) + truncation)};
  }
  const double v = -2 * t * std::exp(-t) / -std::expm1(-2 * t);
  return {v, round_up_bound(6 * u * std::abs(v))};
}

EvalResult tanh_kernel(double t) {
  require_positive(t, "tanh_kernel");
  if (t < kSmallArgumentSwitch) {
    const double t2 = t * t;
    const double v = t2 * (1.0 / 12 + t2 * (-1.0 / 720 + t2 / 30240));
    const double truncation = t2 * t2 * t2 * t2 / 1209600;
    return {v, round_up_bound(4 * u * v + truncation)};
  }
  const double ratio = 0.5 * t / std::tanh(0.5 * t);
  const double v = ratio - 1.0;
  return {v, round_up_bound(4 * u * ratio + u * std::abs(v))};
}

std::string KernelId::name() const {
  switch (kind) {
    case Kind::H:
      return "h_" + std::to_string(k);
    case Kind::Omega:
      return "omega";
    case Kind::Tanh:
      return "tanh_kernel";
    case Kind::Kappa:
      return "kappa";
  }
  return "unknown";
}

EvalResult KernelId::evaluate(double t) const {
  switch (kind) {
    case Kind::H:
      return h_kernel(k, t);
    case Kind::Omega:
      return polycm::omega(t);
    case Kind::Tanh:
      return tanh_kernel(t);
    case Kind::Kappa:
      return polycm::kappa(t);
  }
  throw DomainError("KernelId: unknown kind");
}

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::increasing:
      return "increasing";
    case Monotonicity::decreasing:
      return "decreasing";
    case Monotonicity::none:
      return "none";
  }
  return "none";
}

std::string to_string(GridEnd e) { return e == GridEnd::zero ? "zero" : "infinity"; }

Monotonicity expected_monotonicity(const KernelId& kernel) {
  switch (kernel.kind) {
    case KernelId::Kind::H:
      return kernel.k >= 0 ? Monotonicity::decreasing : Monotonicity::increasing;
    case KernelId::Kind::Omega:
    case KernelId::Kind::Tanh:
      return Monotonicity::increasing;
    case KernelId::Kind::Kappa:
      return Monotonicity::decreasing;
  }
  return Monotonicity::none;
}

RangeClaim expected_range(const KernelId& kernel) {
  switch (kernel.kind) {
    case KernelId::Kind::H:
      if (kernel.k == -1) return {1.0, std::nullopt};
      if (kernel.k == 0) return {0.5, std::nullopt};
      return {0.0, std::nullopt};
    case KernelId::Kind::Omega:
      return {-1.0, 0.0};
    case KernelId::Kind::Tanh:
      return {0.0, std::nullopt};
    case KernelId::Kind::Kappa:
      return {1.0, std::nullopt};
  }
  return {};
}

std::optional<double> expected_limit(const KernelId& kernel, GridEnd end) {
  const bool at_zero = end == GridEnd::zero;
  switch (kernel.kind) {
    case KernelId::Kind::H:
      if (at_zero) {
        if (kernel.k <= -2) return 0.0;
        if (kernel.k == -1) return 1.0;
        return std::nullopt;
      }
      if (kernel.k <= -1) return std::nullopt;
      if (kernel.k == 0) return 0.5;
      return 0.0;
    case KernelId::Kind::Omega:
      return at_zero ? -1.0 : 0.0;
    case KernelId::Kind::Tanh:
      if (at_zero) return 0.0;
      return std::nullopt;
    case KernelId::Kind::Kappa:
      if (at_zero) return std::nullopt;
      return 1.0;
  }
  return std::nullopt;
}

bool KernelReport::limits_pass() const {
  return std::all_of(limit_checks.begin(), limit_checks.end(),
                     [](const LimitCheck& c) { return c.passed; });
}

bool KernelReport::claims_contradicted() const {
  if (range_violations > 0) {
    return true;
  }
  switch (expected_monotonicity) {
    case Monotonicity::increasing:
      return decreasing_pairs > 0;
    case Monotonicity::decreasing:
      return increasing_pairs > 0;
    case Monotonicity::none:
      return false;
  }
  return false;
}

KernelReport kernel_report(const KernelId& kernel, std::span<const double> grid,
                           double limit_tolerance) {
  if (grid.empty()) {
    throw DomainError("kernel_report: empty grid");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0)) {
      throw DomainError("kernel_report: grid points must be positive");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("kernel_report: grid must be strictly increasing");
    }
  }

  KernelReport report;
  report.kernel = kernel;
  report.grid.assign(grid.begin(), grid.end());
  report.values.reserve(grid.size());
  for (double t : grid) {
    report.values.push_back(kernel.evaluate(t));
  }
  report.expected_monotonicity = expected_monotonicity(kernel);
  report.claimed_range = expected_range(kernel);

  // Comparisons run on the excess over the range floor: adjacent differences
  // are the same as for the values, but stay resolvable where the values
  // round to their limit.
  std::vector<EvalResult> excess;
  excess.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    excess.push_back(range_excess(kernel, report.values[i], grid[i], report.claimed_range.lower));
  }

  std::ostringstream diag;
  std::size_t up = 0;
  std::size_t down = 0;
  for (std::size_t i = 0; i + 1 < excess.size(); ++i) {
    const EvalResult& a = excess[i];
    const EvalResult& b = excess[i + 1];
    const double diff = b.value - a.value;
    if (std::abs(diff) <= a.abs_error + b.abs_error) {
      if (report.inconclusive_pairs == 0) {
        diag << "first inconclusive pair at t=" << grid[i] << ".." << grid[i + 1] << "; ";
      }
      ++report.inconclusive_pairs;
    } else if (diff > 0) {
      ++up;
    } else {
      ++down;
    }
  }
  report.increasing_pairs = up;
  report.decreasing_pairs = down;
  const std::size_t pairs = report.values.size() - 1;
  if (pairs > 0 && report.inconclusive_pairs == 0) {
    if (up == pairs) {
      report.monotonicity = Monotonicity::increasing;
    } else if (down == pairs) {
      report.monotonicity = Monotonicity::decreasing;
    }
  }
  if (report.monotonicity == Monotonicity::none && pairs > 0) {
    diag << up << " increasing, " << down << " decreasing, " << report.inconclusive_pairs
         << " inconclusive adjacent pairs";
  }
  report.diagnostics = diag.str();

  report.range_holds = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const EvalResult& v = report.values[i];
    const EvalResult& to_lower = excess[i];
    const double to_upper =
        report.claimed_range.upper ? *report.claimed_range.upper - v.value : HUGE_VAL;
    if (to_lower.certified_negative() || to_upper < -v.abs_error) {
      ++report.range_violations;
      report.range_holds = false;
    } else if (!to_lower.certified_positive() || to_upper <= v.abs_error) {
      ++report.range_inconclusive;
      report.range_holds = false;
    }
  }

  const auto max_it = std::max_element(
      report.values.begin(), report.values.end(),
      [](const EvalResult& a, const EvalResult& b) { return a.value < b.value; });
  for (GridEnd end : {GridEnd::zero, GridEnd::infinity}) {
    LimitCheck check;
    check.end = end;
    check.expected = expected_limit(kernel, end);
    const std::size_t idx = end == GridEnd::zero ? 0 : report.values.size() - 1;
    check.endpoint = grid[idx];
    check.value = report.values[idx];
    check.tolerance = limit_tolerance;
    if (check.expected) {
      check.achieved = std::abs(check.value.value - *check.expected);
      check.passed = check.achieved + check.value.abs_error <= limit_tolerance;
    } else {
      check.achieved = 0.0;
      check.passed = (report.values.begin() + static_cast<std::ptrdiff_t>(idx)) == max_it;
    }
    report.limit_checks.push_back(check);
  }
  return report;
}

double laplace_power_identity(double r, double x, const PrecisionConfig& cfg) {
  cfg.validate();
  if (!(r > 0) || !(x > 0)) {
    throw DomainError("laplace_power_identity: r and x must be positive");
  }
  const double p = r - 1.0;
  const double tol = 1e-3 * cfg.target_abs_error;
  const auto power_exp = [p](double rate) {
    return [p, rate](double t) { return std::exp(p * std::log(t) - rate * t); };
  };

  double gamma_r = 0.0;
  if (r == std::floor(r) && r <= 170) {
    gamma_r = factorial(static_cast<int>(r) - 1);
  } else {
    const double T = power_exp_truncation(p, 1.0, tol);
    const EvalResult g = integrate(power_exp(1.0), 0.0, 1.0) + integrate(power_exp(1.0), 1.0, T);
    if (g.abs_error > cfg.budget_for(g.value)) {
      throw ConvergenceError("laplace_power_identity: Gamma quadrature did not converge",
                             g.abs_error);
    }
    gamma_r = g.value;
  }

  const double T = power_exp_truncation(p, x, tol * gamma_r);
  const double split = std::min(1.0, T);
  const EvalResult integral = integrate(power_exp(x), 0.0, split) + integrate(power_exp(x), split, T);
  if (integral.abs_error > cfg.budget_for(integral.value) * gamma_r) {
    throw ConvergenceError("laplace_power_identity: quadrature did not converge",
                           integral.abs_error);
  }
  return std::abs(std::pow(x, -r) - integral.value / gamma_r);
}

}  // namespace polycm
