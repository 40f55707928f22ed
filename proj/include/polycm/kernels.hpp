#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polycm/eval_result.hpp"
#include "polycm/precision.hpp"

namespace polycm {

/// Below this argument every kernel switches to its truncated Taylor series.
inline constexpr double kSmallArgumentSwitch = 0x1p-10;

/// 1/(1 - e^{-t}), t > 0.
EvalResult kappa(double t);

/// h_k(t) = (1/(1 - e^{-t}) - 1/2) / t^k for any integer k, t > 0.
EvalResult h_kernel(int k, double t);

/// omega(t) = 2t e^t / (1 - e^{2t}), evaluated as -2t e^{-t} / (1 - e^{-2t}).
EvalResult omega(double t);

/// (t/2) / tanh(t/2) - 1, t > 0.
EvalResult tanh_kernel(double t);

struct KernelId {
  enum class Kind { H, Omega, Tanh, Kappa };

  Kind kind = Kind::Kappa;
  int k = 0;  // only meaningful for H

  static KernelId h(int k) { return {Kind::H, k}; }
  static KernelId omega() { return {Kind::Omega, 0}; }
  static KernelId tanh() { return {Kind::Tanh, 0}; }
  static KernelId kappa() { return {Kind::Kappa, 0}; }

  std::string name() const;
  EvalResult evaluate(double t) const;

  friend bool operator==(const KernelId&, const KernelId&) = default;
};

enum class Monotonicity { increasing, decreasing, none };
std::string to_string(Monotonicity m);

enum class GridEnd { zero, infinity };
std::string to_string(GridEnd e);

/// Comparison of a grid endpoint value against the kernel's known limit.
struct LimitCheck {
  GridEnd end = GridEnd::zero;
  /// nullopt means the limit is +infinity; the check then requires the endpoint
  /// value to be the grid maximum.
  std::optional<double> expected;
  double endpoint = 0.0;
  EvalResult value;
  double achieved = 0.0;  // |value - expected| for finite limits
  double tolerance = 0.0;
  bool passed = false;
};

/// Open interval (lower, upper) that every kernel value must lie in;
/// upper = nullopt means unbounded above.
struct RangeClaim {
  double lower = 0.0;
  std::optional<double> upper;
};

struct KernelReport {
  KernelId kernel;
  std::vector<double> grid;
  std::vector<EvalResult> values;
  Monotonicity monotonicity = Monotonicity::none;
  Monotonicity expected_monotonicity = Monotonicity::none;
  std::size_t increasing_pairs = 0;
  std::size_t decreasing_pairs = 0;
  std::size_t inconclusive_pairs = 0;
  std::string diagnostics;
  std::vector<LimitCheck> limit_checks;
  RangeClaim claimed_range;
  bool range_holds = false;
  // Points certified outside the claimed range, and points too close to a
  // range end to decide.
  std::size_t range_violations = 0;
  std::size_t range_inconclusive = 0;

  /// Monotone direction and range certified on every sample.
  bool claims_hold() const {
    return monotonicity == expected_monotonicity && range_holds;
  }
  /// Some sample certifiably contradicts the known direction or range.
  /// Unresolved pairs or points do not count.
  bool claims_contradicted() const;
  bool limits_pass() const;
};

/// Known direction, range and endpoint limits of each kernel.
Monotonicity expected_monotonicity(const KernelId& kernel);
RangeClaim expected_range(const KernelId& kernel);
/// nullopt = +infinity.
std::optional<double> expected_limit(const KernelId& kernel, GridEnd end);

/// Evaluates the kernel on a strictly increasing positive grid and asserts a
/// monotone direction only when every adjacent difference clears the combined
/// error bounds of its two endpoints.
KernelReport kernel_report(const KernelId& kernel, std::span<const double> grid,
                           double limit_tolerance = 1e-5);

/// |x^{-r} - (1/Gamma(r)) int_0^inf t^{r-1} e^{-xt} dt|. Gamma(r) is (r-1)! for
/// integer r and a quadrature of its defining integral otherwise.
double laplace_power_identity(double r, double x, const PrecisionConfig& cfg = {});

}  // namespace polycm
