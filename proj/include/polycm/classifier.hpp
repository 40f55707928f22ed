#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polycm/cm_engine.hpp"
#include "polycm/int_polynomial.hpp"
#include "polycm/kernels.hpp"
#include "polycm/precision.hpp"

namespace polycm {

// Bounding polynomials for f'_{m,2nu}(x):
//   q(x) / (2 x^{2m+2nu+3}) <= f'_{m,2nu}(x) <= p(x) / (4 x^{2m+2nu+3}).
// The *_printed forms reproduce the published polynomials term for term; the
// *_derived forms follow from substituting the two-sided polygamma bounds
//   (k-1)!/x^k + k!/(2x^{k+1}) < |psi^(k)(x)| < (k-1)!/x^k + k!/x^{k+1}
// into f' = |psi^(2nu+1)| - 2 |psi^(m)| |psi^(m+1)|. Derived negative
// coefficients are exactly twice the printed ones.
IntPolynomial q_printed(int m, int nu);
IntPolynomial p_printed(int m, int nu);
IntPolynomial q_derived(int m, int nu);
IntPolynomial p_derived(int m, int nu);

/// Power of x dividing the bounding polynomials: 2m + 2nu + 3.
int bound_denominator_power(int m, int nu);

enum class Sign { negative = -1, zero = 0, positive = 1 };
std::string to_string(Sign s);

/// Sign of the coefficient that dominates as x -> end: the highest power at
/// infinity, the lowest at zero. DomainError for the zero polynomial.
Sign leading_term_sign(const IntPolynomial& poly, GridEnd end);

enum class BinomCase { i_equals_m_equals_one, zero_below, at_least_two };
std::string to_string(BinomCase c);

struct BinomQuantity {
  BigInt value;  // i * C(2i-1, m)
  BinomCase label;
};

/// i * C(2i-1, m) with its case: 1 for i = m = 1, 0 for 2i-1 < m, >= 2 otherwise.
BinomQuantity binom_quantity(int i, int m);

/// 1 - m * C(2m-1, m-1).
BigInt discriminant_mn(int m);

/// Leading asymptotic form of f_{m,2nu} at the given end; idx.n must be even.
///   infinity: [(m-1)!]^2 / x^{2m} - (2nu-1)! / x^{2nu}
///   zero:     (m!)^2 / x^{2m+2}   - (2nu)! / x^{2nu+1}
EvalResult envelope(FamilyIndex idx, double x, GridEnd end);

enum class BoundVariant { p_printed, p_derived, q_printed, q_derived };
std::string to_string(BoundVariant v);

struct BoundComparison {
  BoundVariant variant = BoundVariant::p_derived;
  EvalResult bound;
  /// Signed distance in the direction the bound claims: bound - f' for the
  /// p (upper) variants, f' - bound for the q (lower) variants.
  double margin = 0.0;
  double margin_error = 0.0;
  bool holds = false;  // margin > margin_error
};

struct BoundRow {
  double x = 0.0;
  EvalResult derivative;  // f'_{m,2nu}(x)
  std::array<BoundComparison, 4> comparisons;
};

struct BoundFinding {
  BoundVariant variant = BoundVariant::q_printed;
  double x = 0.0;
  EvalResult derivative;
  EvalResult bound;
  std::string message;
};

struct BoundReport {
  FamilyIndex index{1, 2};
  std::vector<BoundRow> rows;
  std::size_t derived_violations = 0;
  std::size_t printed_p_violations = 0;
  std::vector<BoundFinding> findings;  // printed-bound failures, reported not fatal

  bool derived_bounds_hold() const { return derived_violations == 0; }
};

/// Compares f'_{m,2nu} with all four bound variants at every grid point.
BoundReport bound_check(FamilyIndex idx, std::span<const double> grid,
                        const PrecisionConfig& cfg = {});

enum class WitnessKind { sign_change, non_monotonic };
std::string to_string(WitnessKind k);

struct WitnessPoint {
  double x = 0.0;
  EvalResult value;  // f for sign_change, f' for non_monotonic
};

struct Witness {
  WitnessKind kind = WitnessKind::sign_change;
  WitnessPoint positive;  // x_pos / x_up
  WitnessPoint negative;  // x_neg / x_down
  double margin_factor = 10.0;

  bool certified() const {
    return positive.value.certified_positive(margin_factor) &&
           negative.value.certified_negative(margin_factor);
  }
};

struct SearchOptions {
  double x_min = 1e-3;
  double x_max = 1e3;
  int coarse_points = 128;
  double rel_width = 1e-6;
  int max_refinements = 200;
  /// A point is certified only when |value| > margin_factor * abs_error.
  double margin_factor = 10.0;
  /// Each widening extends the scan a decade on both sides.
  int max_widenings = 2;
};

/// Certified x_pos, x_neg with f_{m,n}(x_pos) > 0 > f_{m,n}(x_neg); n even and
/// (m, n) != (1, 2). Coarse log scan, then log-space bisection of the first
/// certified opposite-sign bracket. SearchExhausted on failure.
Witness find_sign_change(int m, int even_n, const SearchOptions& opts = {},
                         const PrecisionConfig& cfg = {});

/// As find_sign_change, on f'_{m,n}.
Witness find_nonmonotonic(int m, int even_n, const SearchOptions& opts = {},
                          const PrecisionConfig& cfg = {});

enum class Verdict { cm_trivial, cm_nontrivial, sign_changing_nonmonotonic };
std::string to_string(Verdict v);

/// The closed-form rule: odd n trivially CM, (1,2) nontrivially CM, every
/// other even n sign-changing and non-monotonic.
Verdict closed_form_verdict(int m, int n);

struct ClassificationEntry {
  FamilyIndex index{1, 1};
  Verdict verdict = Verdict::cm_trivial;
  std::optional<CMReport> cm_evidence;
  std::optional<Witness> sign_change;
  std::optional<Witness> non_monotonic;
};

struct ClassifyOptions {
  int max_order = 8;
  std::vector<double> grid = standard_grid();
  SearchOptions search;
};

/// Classifies f_{m,n} from numeric evidence alone: a clean CM check makes it
/// CM (trivial for odd n), a CM violation triggers both witness searches.
/// Throws ClassificationError when the evidence supports no verdict.
ClassificationEntry classify(int m, int n, const PrecisionConfig& cfg = {},
                             const ClassifyOptions& opts = {});

}  // namespace polycm
