#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "polycm/eval_result.hpp"
#include "polycm/precision.hpp"

namespace polycm {

/// (m, n) in f_{m,n}(x) = [psi^(m)(x)]^2 + psi^(n)(x). n is always the full
/// second index; code that needs the half index of an even n derives it.
struct FamilyIndex {
  int m;
  int n;

  FamilyIndex(int m, int n);

  friend bool operator==(const FamilyIndex&, const FamilyIndex&) = default;
};

/// f_{m,n}(x), computed as f_derivative(idx, 0, x) so the two agree bit for bit.
EvalResult f_value(FamilyIndex idx, double x, const PrecisionConfig& cfg = {});

/// f^{(l)}(x) = psi^(n+l)(x) + sum_j C(l,j) psi^(m+j)(x) psi^(m+l-j)(x).
/// Throws CapabilityError when an order exceeds cfg.max_polygamma_order.
EvalResult f_derivative(FamilyIndex idx, int order, double x, const PrecisionConfig& cfg = {});

/// |central difference of order l of f_value with the given step - f_derivative|.
double finite_difference_crosscheck(FamilyIndex idx, int order, double x, double step,
                                    const PrecisionConfig& cfg = {});

enum class EntryStatus { positive, inconclusive, violation };

struct CMEntry {
  int order = 0;
  double x = 0.0;
  EvalResult signed_value;  // (-1)^l f^{(l)}(x)
  EntryStatus status = EntryStatus::positive;
};

enum class CMVerdict { consistent_with_cm, violation, inconclusive };

struct CMReport {
  FamilyIndex index{1, 1};
  int max_order = 0;
  std::vector<double> grid;
  std::vector<CMEntry> entries;  // order-major: entries[l * grid.size() + i]
  CMVerdict verdict = CMVerdict::inconclusive;
  std::optional<CMEntry> first_violation;
  std::size_t violations = 0;
  std::size_t inconclusive = 0;

  double inconclusive_fraction() const {
    return entries.empty() ? 0.0 : static_cast<double>(inconclusive) / entries.size();
  }
  /// Smallest signed_value / abs_error over the non-violating entries.
  double min_margin_ratio() const;
};

/// Signs of (-1)^l f^{(l)} for l = 0..max_order on the grid. A point with
/// |value| <= abs_error is inconclusive, never a violation. The verdict is
/// consistent_with_cm when nothing is violated and at most
/// max_inconclusive_fraction of the entries are inconclusive.
CMReport cm_check(FamilyIndex idx, int max_order, std::span<const double> grid,
                  const PrecisionConfig& cfg = {}, double max_inconclusive_fraction = 0.01);

/// count log-spaced (or linearly spaced) points covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);
std::vector<double> linear_grid(double lo, double hi, std::size_t count);
/// 200 log-spaced points in [0.01, 100].
std::vector<double> standard_grid();

/// f_{1,2}(x) - f_{1,2}(x+1) in closed form: (2/x^2)(psi'(x) - 1/(2x^2) - 1/x).
EvalResult shift_difference(double x, const PrecisionConfig& cfg = {});

struct ShiftDifferenceResiduals {
  double closed_form = 0.0;  // against shift_difference
  double quadrature = 0.0;   // against (2/x^2) int tanh_kernel(t) e^{-xt} dt
  double max() const { return closed_form > quadrature ? closed_form : quadrature; }
};

ShiftDifferenceResiduals shift_difference_residuals(double x, const PrecisionConfig& cfg = {});

/// Max of the two residuals above.
double shift_difference_kernel_check(double x, const PrecisionConfig& cfg = {});

inline constexpr std::array<int, 3> kTelescopingLadder = {10, 100, 1000};

struct TelescopingRow {
  double x = 0.0;
  EvalResult partial_sum;        // sum_{k=0}^{N} shift_difference(x + k)
  EvalResult direct_difference;  // f(x) - f(x + N + 1)
  double identity_residual = 0.0;
  double residual_bound = 0.0;
  std::array<EvalResult, kTelescopingLadder.size()> remainders;  // f(x + M + 1)
  bool remainders_decreasing = false;
};

struct TelescopingReport {
  int N = 0;
  std::vector<TelescopingRow> rows;

  double max_identity_residual() const;
  bool all_remainders_decreasing() const;
};

/// Checks the telescoping identity for f_{1,2} at every grid point and that the
/// remainder f_{1,2}(x + M + 1) decreases along M = 10, 100, 1000.
TelescopingReport telescoping_check(int N, std::span<const double> grid,
                                    const PrecisionConfig& cfg = {});

}  // namespace polycm
