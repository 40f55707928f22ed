#include "polycm/cm_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polycm/errors.hpp"
#include "polycm/kernels.hpp"
#include "polycm/polygamma.hpp"
#include "polycm/quadrature.hpp"
#include "polycm/summation.hpp"

namespace polycm {

namespace {

constexpr double u = kUnitRoundoff;

void check_grid(std::span<const double> grid, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0) || !std::isfinite(grid[i])) {
      throw DomainError(std::string(what) + ": grid points must be positive and finite");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError(std::string(what) + ": grid must be strictly increasing");
    }
  }
}

// Pascal row C(l, 0..l) in double; exact while the entries stay below 2^53.
std::vector<double> binomial_row(int l) {
  std::vector<double> row(static_cast<std::size_t>(l) + 1, 0.0);
  row[0] = 1.0;
  for (int i = 1; i <= l; ++i) {
    for (int j = i; j > 0; --j) {
      row[j] += row[j - 1];
    }
  }
  return row;
}

void check_orders(FamilyIndex idx, int order, const PrecisionConfig& cfg) {
  if (order < 0) {
    throw DomainError("derivative order must be non-negative");
  }
  const int highest = std::max(idx.m, idx.n) + order;
  if (highest > cfg.max_polygamma_order) {
    throw CapabilityError("derivative order " + std::to_string(order) +
                          " needs polygamma order " + std::to_string(highest) +
                          " above the configured cap " + std::to_string(cfg.max_polygamma_order));
  }
}

// psi^(k)(x) for every k in [first, last].
class PsiTable {
 public:
  PsiTable(int first, int last, double x, const PrecisionConfig& cfg) : first_(first) {
    values_.reserve(static_cast<std::size_t>(last - first + 1));
    for (int k = first; k <= last; ++k) {
      values_.push_back(psi(PolyOrder(k), x, cfg));
    }
  }
  const EvalResult& operator[](int k) const { return values_[static_cast<std::size_t>(k - first_)]; }

 private:
  int first_;
  std::vector<EvalResult> values_;
};

EvalResult combine_derivative(FamilyIndex idx, int order, const PsiTable& table) {
  const std::vector<double> binom = binomial_row(order);
  CompensatedSum sum;
  sum.add(table[idx.n + order]);
  for (int j = 0; j <= order; ++j) {
    const EvalResult product = table[idx.m + j] * table[idx.m + order - j];
    const double c = binom[static_cast<std::size_t>(j)];
    const double v = c * product.value;
    sum.add(v, c * product.abs_error + 2 * u * std::abs(v));
  }
  EvalResult r = sum.result();
  if (!std::isfinite(r.value)) {
    throw RangeError("f_derivative: value not representable in double");
  }
  return r;
}

PsiTable table_for(FamilyIndex idx, int order, double x, const PrecisionConfig& cfg) {
  const int lo = std::min(idx.m, idx.n);
  const int hi = std::max(idx.m, idx.n) + order;
  return PsiTable(lo, hi, x, cfg);
}

}  // namespace

FamilyIndex::FamilyIndex(int m_, int n_) : m(m_), n(n_) {
  if (m < 1 || n < 1) {
    throw DomainError("FamilyIndex requires m >= 1 and n >= 1");
  }
}

EvalResult f_derivative(FamilyIndex idx, int order, double x, const PrecisionConfig& cfg) {
  check_orders(idx, order, cfg);
  return combine_derivative(idx, order, table_for(idx, order, x, cfg));
}

EvalResult f_value(FamilyIndex idx, double x, const PrecisionConfig& cfg) {
  return f_derivative(idx, 0, x, cfg);
}

double finite_difference_crosscheck(FamilyIndex idx, int order, double x, double step,
                                    const PrecisionConfig& cfg) {
  if (order < 1) {
    throw DomainError("finite_difference_crosscheck: order must be >= 1");
  }
  if (!(step > 0) || !(x - order * step / 2 > 0)) {
    throw DomainError("finite_difference_crosscheck: stencil leaves the positive axis");
  }
  const std::vector<double> binom = binomial_row(order);
  CompensatedSum sum;
  for (int j = 0; j <= order; ++j) {
    const double offset = (0.5 * order - j) * step;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum.add(sign * binom[static_cast<std::size_t>(j)] * f_value(idx, x + offset, cfg).value);
  }
  const double difference = sum.value() / std::pow(step, order);
  return std::abs(difference - f_derivative(idx, order, x, cfg).value);
}

double CMReport::min_margin_ratio() const {
  double best = INFINITY;
  for (const CMEntry& e : entries) {
    if (e.status == EntryStatus::violation) {
      continue;
    }
    const double ratio = e.signed_value.abs_error > 0 ? e.signed_value.value / e.signed_value.abs_error
                                                      : INFINITY;
    best = std::min(best, ratio);
  }
  return best;
}

CMReport cm_check(FamilyIndex idx, int max_order, std::span<const double> grid,
                  const PrecisionConfig& cfg, double max_inconclusive_fraction) {
  check_grid(grid, "cm_check");
  check_orders(idx, max_order, cfg);

  CMReport report;
  report.index = idx;
  report.max_order = max_order;
  report.grid.assign(grid.begin(), grid.end());
  report.entries.resize(static_cast<std::size_t>(max_order + 1) * grid.size());

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const PsiTable table = table_for(idx, max_order, x, cfg);
    for (int l = 0; l <= max_order; ++l) {
      EvalResult d = combine_derivative(idx, l, table);
      if (l % 2 == 1) {
        d = -d;
      }
      CMEntry entry{l, x, d, EntryStatus::positive};
      if (!d.certified()) {
        entry.status = EntryStatus::inconclusive;
      } else if (d.value < 0) {
        entry.status = EntryStatus::violation;
      }
      report.entries[static_cast<std::size_t>(l) * grid.size() + i] = entry;
    }
  }

  for (const CMEntry& e : report.entries) {
    if (e.status == EntryStatus::violation) {
      if (!report.first_violation) {
        report.first_violation = e;
      }
      ++report.violations;
    } else if (e.status == EntryStatus::inconclusive) {
      ++report.inconclusive;
    }
  }
  if (report.violations > 0) {
    report.verdict = CMVerdict::violation;
  } else if (report.inconclusive_fraction() <= max_inconclusive_fraction) {
    report.verdict = CMVerdict::consistent_with_cm;
  } else {
    report.verdict = CMVerdict::inconclusive;
  }
  return report;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0) || !(hi > lo) || count < 2) {
    throw DomainError("log_grid requires 0 < lo < hi and count >= 2");
  }
  std::vector<double> g(count);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = std::exp(a + step * static_cast<double>(i));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (!(hi > lo) || count < 2) {
    throw DomainError("linear_grid requires lo < hi and count >= 2");
  }
  std::vector<double> g(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = lo + step * static_cast<double>(i);
  }
  g.back() = hi;
  return g;
}

std::vector<double> standard_grid() { return log_grid(0.01, 100.0, 200); }

EvalResult shift_difference(double x, const PrecisionConfig& cfg) {
  if (!(x > 0)) {
    throw DomainError("shift_difference: x must be positive");
  }
  const EvalResult trigamma = polygamma(PolyOrder(1), x, cfg);
  const double inv_x = 1.0 / x;
  const double inv_x2 = inv_x * inv_x;
  const EvalResult half_inv_x2{0.5 * inv_x2, 2 * u * 0.5 * inv_x2};
  const EvalResult inv{inv_x, u * inv_x};
  const EvalResult bracket = trigamma - half_inv_x2 - inv;
  const EvalResult scale{2 * inv_x2, 2 * u * 2 * inv_x2};
  return scale * bracket;
}

ShiftDifferenceResiduals shift_difference_residuals(double x, const PrecisionConfig& cfg) {
  if (!(x > 0)) {
    throw DomainError("shift_difference_kernel_check: x must be positive");
  }
  const FamilyIndex idx(1, 2);
  const EvalResult lhs = f_value(idx, x, cfg) - f_value(idx, x + 1.0, cfg);

  ShiftDifferenceResiduals out;
  out.closed_form = std::abs(lhs.value - shift_difference(x, cfg).value);

  // tanh_kernel(t) <= t/2, so the truncated tail is below half the t e^{-xt} tail.
  const double tol = 1e-3 * cfg.target_abs_error * x * x;
  const double T = std::max(2.0, power_exp_truncation(1.0, x, 2 * tol));
  const auto integrand = [x](double t) { return tanh_kernel(t).value * std::exp(-x * t); };
  QuadratureOptions opts;
  const EvalResult integral = integrate(integrand, 0.0, 1.0, opts) + integrate(integrand, 1.0, T, opts);
  if (integral.abs_error > cfg.budget_for(integral.value)) {
    throw ConvergenceError("shift_difference_kernel_check: quadrature did not converge",
                           integral.abs_error);
  }
  out.quadrature = std::abs(lhs.value - 2.0 / (x * x) * integral.value);
  return out;
}

double shift_difference_kernel_check(double x, const PrecisionConfig& cfg) {
  return shift_difference_residuals(x, cfg).max();
}

double TelescopingReport::max_identity_residual() const {
  double worst = 0.0;
  for (const TelescopingRow& r : rows) {
    worst = std::max(worst, r.identity_residual);
  }
  return worst;
}

bool TelescopingReport::all_remainders_decreasing() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const TelescopingRow& r) { return r.remainders_decreasing; });
}

TelescopingReport telescoping_check(int N, std::span<const double> grid, const PrecisionConfig& cfg) {
  if (N < 1) {
    throw DomainError("telescoping_check: N must be >= 1");
  }
  check_grid(grid, "telescoping_check");
  const FamilyIndex idx(1, 2);

  TelescopingReport report;
  report.N = N;
  for (double x : grid) {
    TelescopingRow row;
    row.x = x;
    CompensatedSum partial;
    for (int k = 0; k <= N; ++k) {
      partial.add(shift_difference(x + k, cfg));
    }
    row.partial_sum = partial.result();
    const EvalResult head = f_value(idx, x, cfg);
    row.direct_difference = head - f_value(idx, x + N + 1.0, cfg);
    row.identity_residual = std::abs(row.partial_sum.value - row.direct_difference.value);
    row.residual_bound = row.partial_sum.abs_error + row.direct_difference.abs_error;

    for (std::size_t i = 0; i < kTelescopingLadder.size(); ++i) {
      const EvalResult r = f_value(idx, x + kTelescopingLadder[i] + 1.0, cfg);
      row.remainders[i] = {std::abs(r.value), r.abs_error};
    }
    row.remainders_decreasing = true;
    for (std::size_t i = 0; i + 1 < row.remainders.size(); ++i) {
      const EvalResult& a = row.remainders[i];
      const EvalResult& b = row.remainders[i + 1];
      if (!(a.value - b.value > a.abs_error + b.abs_error)) {
        row.remainders_decreasing = false;
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace polycm
