#include "polycm/classifier.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "polycm/errors.hpp"

namespace polycm {

namespace {

constexpr double u = kUnitRoundoff;

using BigRational = boost::multiprecision::cpp_rational;

void require_indices(int m, int nu, const char* what) {
  if (m < 1 || nu < 1) {
    throw DomainError(std::string(what) + ": indices must be >= 1");
  }
}

BigInt fact(int n) { return big_factorial(static_cast<unsigned>(n)); }

// Printed bounding polynomial
//   a (2nu)! x^{2m+2} + b (2nu+1)! x^{2m+1}
//   - c m!(m+1)! x^{2nu} - d [(m!)^2 + (m-1)!(m+1)!] x^{2nu+1} - e (m-1)! m! x^{2nu+2}
IntPolynomial printed_form(int m, int nu, int a, int b, int c, int d, int e) {
  const auto um = static_cast<unsigned>(m);
  const auto un = static_cast<unsigned>(nu);
  IntPolynomial poly;
  poly.add_term(a * fact(2 * nu), 2 * um + 2);
  poly.add_term(b * fact(2 * nu + 1), 2 * um + 1);
  poly.add_term(-c * fact(m) * fact(m + 1), 2 * un);
  poly.add_term(-d * (fact(m) * fact(m) + fact(m - 1) * fact(m + 1)), 2 * un + 1);
  poly.add_term(-e * fact(m - 1) * fact(m), 2 * un + 2);
  return poly;
}

// Laurent polynomial in x: exponent -> exact rational coefficient.
using Laurent = std::map<int, BigRational>;

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [pa, ca] : a) {
    for (const auto& [pb, cb] : b) {
      out[pa + pb] += ca * cb;
    }
  }
  return out;
}

Laurent scaled(const Laurent& a, const BigRational& s) {
  Laurent out;
  for (const auto& [p, c] : a) {
    out[p] = c * s;
  }
  return out;
}

Laurent operator-(Laurent a, const Laurent& b) {
  for (const auto& [p, c] : b) {
    a[p] -= c;
  }
  return a;
}

// (k-1)!/x^k + k!/(2x^{k+1})  and  (k-1)!/x^k + k!/x^{k+1}.
Laurent psi_lower(int k) {
  return {{-k, BigRational(fact(k - 1))}, {-(k + 1), BigRational(fact(k), 2)}};
}
Laurent psi_upper(int k) {
  return {{-k, BigRational(fact(k - 1))}, {-(k + 1), BigRational(fact(k))}};
}

// scale * x^shift * laurent as an integer polynomial.
IntPolynomial to_polynomial(const Laurent& laurent, int scale, int shift) {
  IntPolynomial poly;
  for (const auto& [p, c] : laurent) {
    const BigRational v = c * scale;
    if (v == 0) {
      continue;
    }
    if (boost::multiprecision::denominator(v) != 1 || p + shift < 0) {
      throw DomainError("bounding polynomial has non-integer coefficients");
    }
    poly.add_term(boost::multiprecision::numerator(v), static_cast<unsigned>(p + shift));
  }
  return poly;
}

struct SearchTarget {
  std::function<EvalResult(double)> evaluate;
  WitnessKind kind;
};

Witness search_witness(const SearchTarget& target, const SearchOptions& opts, int m, int n) {
  if (!(opts.x_min > 0) || !(opts.x_max > opts.x_min) || opts.coarse_points < 2) {
    throw DomainError("witness search: invalid search range");
  }
  const auto certified = [&](const EvalResult& v) { return v.certified(opts.margin_factor); };

  double lo = opts.x_min;
  double hi = opts.x_max;
  for (int widening = 0; widening <= opts.max_widenings; ++widening) {
    const std::vector<double> grid = log_grid(lo, hi, static_cast<std::size_t>(opts.coarse_points));
    std::optional<WitnessPoint> last;
    for (double x : grid) {
      const EvalResult v = target.evaluate(x);
      if (!certified(v)) {
        continue;
      }
      const WitnessPoint here{x, v};
      if (last && (last->value.value > 0) != (v.value > 0)) {
        WitnessPoint a = *last;
        WitnessPoint b = here;
        for (int step = 0; step < opts.max_refinements && (b.x - a.x) / a.x > opts.rel_width; ++step) {
          const double mid = std::sqrt(a.x * b.x);
          const EvalResult mv = target.evaluate(mid);
          if (!certified(mv)) {
            break;
          }
          if ((mv.value > 0) == (a.value.value > 0)) {
            a = {mid, mv};
          } else {
            b = {mid, mv};
          }
        }
        Witness w;
        w.kind = target.kind;
        w.margin_factor = opts.margin_factor;
        w.positive = a.value.value > 0 ? a : b;
        w.negative = a.value.value > 0 ? b : a;
        return w;
      }
      last = here;
    }
    lo /= 10;
    hi *= 10;
  }
  throw SearchExhausted(to_string(target.kind) + " witness search exhausted for f_{" +
                        std::to_string(m) + "," + std::to_string(n) + "}");
}

void require_even_family(int m, int even_n, const char* what) {
  if (m < 1 || even_n < 2 || even_n % 2 != 0) {
    throw DomainError(std::string(what) + ": requires m >= 1 and an even second index >= 2");
  }
  if (m == 1 && even_n == 2) {
    throw DomainError(std::string(what) + ": f_{1,2} is completely monotonic; no witness exists");
  }
}

}  // namespace

IntPolynomial q_printed(int m, int nu) {
  require_indices(m, nu, "q_printed");
  return printed_form(m, nu, 2, 1, 2, 2, 2);
}

IntPolynomial p_printed(int m, int nu) {
  require_indices(m, nu, "p_printed");
  return printed_form(m, nu, 4, 4, 1, 2, 4);
}

IntPolynomial q_derived(int m, int nu) {
  require_indices(m, nu, "q_derived");
  // f' > |psi^(2nu+1)|_lower - 2 |psi^(m)|_upper |psi^(m+1)|_upper
  const Laurent bound = psi_lower(2 * nu + 1) - scaled(psi_upper(m) * psi_upper(m + 1), 2);
  return to_polynomial(bound, 2, bound_denominator_power(m, nu));
}

IntPolynomial p_derived(int m, int nu) {
  require_indices(m, nu, "p_derived");
  // f' < |psi^(2nu+1)|_upper - 2 |psi^(m)|_lower |psi^(m+1)|_lower
  const Laurent bound = psi_upper(2 * nu + 1) - scaled(psi_lower(m) * psi_lower(m + 1), 2);
  return to_polynomial(bound, 4, bound_denominator_power(m, nu));
}

int bound_denominator_power(int m, int nu) { return 2 * m + 2 * nu + 3; }

std::string to_string(Sign s) {
  switch (s) {
    case Sign::negative:
      return "negative";
    case Sign::zero:
      return "zero";
    case Sign::positive:
      return "positive";
  }
  return "zero";
}

Sign leading_term_sign(const IntPolynomial& poly, GridEnd end) {
  if (poly.is_zero()) {
    throw DomainError("leading_term_sign: zero polynomial");
  }
  const BigInt c = poly.coefficient(end == GridEnd::infinity ? poly.degree() : poly.lowest_power());
  return c > 0 ? Sign::positive : Sign::negative;
}

std::string to_string(BinomCase c) {
  switch (c) {
    case BinomCase::i_equals_m_equals_one:
      return "i=m=1";
    case BinomCase::zero_below:
      return "2i-1<m";
    case BinomCase::at_least_two:
      return ">=2";
  }
  return "";
}

BinomQuantity binom_quantity(int i, int m) {
  require_indices(i, m, "binom_quantity");
  const BigInt value = i * big_binomial(static_cast<unsigned>(2 * i - 1), static_cast<unsigned>(m));
  BinomCase label = BinomCase::at_least_two;
  if (i == 1 && m == 1) {
    label = BinomCase::i_equals_m_equals_one;
  } else if (2 * i - 1 < m) {
    label = BinomCase::zero_below;
  }
  return {value, label};
}

BigInt discriminant_mn(int m) {
  if (m < 1) {
    throw DomainError("discriminant_mn: m must be >= 1");
  }
  return 1 - m * big_binomial(static_cast<unsigned>(2 * m - 1), static_cast<unsigned>(m - 1));
}

EvalResult envelope(FamilyIndex idx, double x, GridEnd end) {
  if (idx.n % 2 != 0) {
    throw DomainError("envelope: second index must be even");
  }
  if (!(x > 0)) {
    throw DomainError("envelope: x must be positive");
  }
  const int m = idx.m;
  const int nu = idx.n / 2;
  double a = 0.0;
  double b = 0.0;
  int pa = 0;
  int pb = 0;
  if (end == GridEnd::infinity) {
    const double c = fact(m - 1).convert_to<double>();
    a = c * c * std::pow(x, -2 * m);
    b = fact(2 * nu - 1).convert_to<double>() * std::pow(x, -2 * nu);
    pa = 2 * m;
    pb = 2 * nu;
  } else {
    const double c = fact(m).convert_to<double>();
    a = c * c * std::pow(x, -(2 * m + 2));
    b = fact(2 * nu).convert_to<double>() * std::pow(x, -(2 * nu + 1));
    pa = 2 * m + 2;
    pb = 2 * nu + 1;
  }
  const double v = a - b;
  if (!std::isfinite(v) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream msg;
    msg << "envelope: f_{" << m << "," << idx.n << "} envelope overflows at x=" << x;
    throw RangeError(msg.str());
  }
  const double e = (pa + 4) * u * a + (pb + 4) * u * b + u * std::abs(v);
  return {v, round_up_bound(e)};
}

std::string to_string(BoundVariant v) {
  switch (v) {
    case BoundVariant::p_printed:
      return "p_printed";
    case BoundVariant::p_derived:
      return "p_derived";
    case BoundVariant::q_printed:
      return "q_printed";
    case BoundVariant::q_derived:
      return "q_derived";
  }
  return "";
}

BoundReport bound_check(FamilyIndex idx, std::span<const double> grid, const PrecisionConfig& cfg) {
  if (idx.n % 2 != 0) {
    throw DomainError("bound_check: second index must be even");
  }
  const int m = idx.m;
  const int nu = idx.n / 2;
  const int shift = bound_denominator_power(m, nu);
  const std::array<std::pair<BoundVariant, IntPolynomial>, 4> polys = {{
      {BoundVariant::p_printed, p_printed(m, nu)},
      {BoundVariant::p_derived, p_derived(m, nu)},
      {BoundVariant::q_printed, q_printed(m, nu)},
      {BoundVariant::q_derived, q_derived(m, nu)},
  }};

  BoundReport report;
  report.index = idx;
  for (double x : grid) {
    BoundRow row;
    row.x = x;
    row.derivative = f_derivative(idx, 1, x, cfg);
    for (std::size_t i = 0; i < polys.size(); ++i) {
      const auto& [variant, poly] = polys[i];
      const bool upper = variant == BoundVariant::p_printed || variant == BoundVariant::p_derived;
      BoundComparison c;
      c.variant = variant;
      c.bound = (upper ? 0.25 : 0.5) * poly.evaluate_scaled(x, shift);
      c.margin = upper ? c.bound.value - row.derivative.value : row.derivative.value - c.bound.value;
      c.margin_error = round_up_bound(c.bound.abs_error + row.derivative.abs_error + u * std::abs(c.margin));
      c.holds = c.margin > c.margin_error;
      row.comparisons[i] = c;

      if (c.holds) {
        continue;
      }
      if (variant == BoundVariant::p_derived || variant == BoundVariant::q_derived) {
        ++report.derived_violations;
        continue;
      }
      if (variant == BoundVariant::p_printed) {
        ++report.printed_p_violations;
      }
      std::ostringstream msg;
      msg.precision(17);
      msg << to_string(variant) << (upper ? " upper" : " lower") << " bound "
          << (c.margin < -c.margin_error ? "fails" : "is inconclusive") << " at x=" << x
          << ": f'=" << row.derivative.value << ", bound=" << c.bound.value;
      report.findings.push_back({variant, x, row.derivative, c.bound, msg.str()});
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string to_string(WitnessKind k) {
  return k == WitnessKind::sign_change ? "sign_change" : "non_monotonic";
}

Witness find_sign_change(int m, int even_n, const SearchOptions& opts, const PrecisionConfig& cfg) {
  require_even_family(m, even_n, "find_sign_change");
  const FamilyIndex idx(m, even_n);
  return search_witness({[&](double x) { return f_value(idx, x, cfg); }, WitnessKind::sign_change},
                        opts, m, even_n);
}

Witness find_nonmonotonic(int m, int even_n, const SearchOptions& opts, const PrecisionConfig& cfg) {
  require_even_family(m, even_n, "find_nonmonotonic");
  const FamilyIndex idx(m, even_n);
  return search_witness(
      {[&](double x) { return f_derivative(idx, 1, x, cfg); }, WitnessKind::non_monotonic}, opts, m,
      even_n);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::cm_trivial:
      return "CM_trivial";
    case Verdict::cm_nontrivial:
      return "CM_nontrivial";
    case Verdict::sign_changing_nonmonotonic:
      return "sign_changing_nonmonotonic";
  }
  return "";
}

Verdict closed_form_verdict(int m, int n) {
  require_indices(m, n, "closed_form_verdict");
  if (n % 2 == 1) {
    return Verdict::cm_trivial;
  }
  if (m == 1 && n == 2) {
    return Verdict::cm_nontrivial;
  }
  return Verdict::sign_changing_nonmonotonic;
}

ClassificationEntry classify(int m, int n, const PrecisionConfig& cfg, const ClassifyOptions& opts) {
  const FamilyIndex idx(m, n);
  ClassificationEntry entry;
  entry.index = idx;
  entry.cm_evidence = cm_check(idx, opts.max_order, opts.grid, cfg);

  const auto pair_name = [&] {
    return "f_{" + std::to_string(m) + "," + std::to_string(n) + "}";
  };

  switch (entry.cm_evidence->verdict) {
    case CMVerdict::consistent_with_cm:
      entry.verdict = (n % 2 == 1) ? Verdict::cm_trivial : Verdict::cm_nontrivial;
      return entry;
    case CMVerdict::inconclusive:
      throw ClassificationError(pair_name() + ": CM check inconclusive");
    case CMVerdict::violation:
      break;
  }
  if (n % 2 == 1) {
    throw ClassificationError(pair_name() + ": CM violation for an odd second index");
  }
  try {
    entry.sign_change = find_sign_change(m, n, opts.search, cfg);
    entry.non_monotonic = find_nonmonotonic(m, n, opts.search, cfg);
  } catch (const SearchExhausted& e) {
    throw ClassificationError(pair_name() + ": " + e.what());
  }
  entry.verdict = Verdict::sign_changing_nonmonotonic;
  return entry;
}

}  // namespace polycm
