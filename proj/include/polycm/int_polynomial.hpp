#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>

#include "polycm/eval_result.hpp"

namespace polycm {

using BigInt = boost::multiprecision::cpp_int;

BigInt big_factorial(unsigned n);
BigInt big_binomial(unsigned n, unsigned k);

/// Polynomial in one variable with exact integer coefficients. Terms with a
/// zero coefficient are never stored, so equal-power terms merge on insertion.
class IntPolynomial {
 public:
  IntPolynomial() = default;

  /// Adds coeff * x^power, merging with any existing term of that power.
  IntPolynomial& add_term(const BigInt& coeff, unsigned power);

  BigInt coefficient(unsigned power) const;
  const std::map<unsigned, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Highest / lowest power with a nonzero coefficient; DomainError if zero.
  unsigned degree() const;
  unsigned lowest_power() const;

  BigInt evaluate_exact(const BigInt& x) const;

  /// sum_i c_i x^(p_i - shift) in double with a rounding bound. The shift lets
  /// callers evaluate poly(x) / x^shift without forming either factor.
  EvalResult evaluate_scaled(double x, int shift = 0) const;

  /// Descending powers, e.g. "-2x^6 - 6x^5 + 44x^4 + 120x^3".
  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::map<unsigned, BigInt> terms_;
};

}  // namespace polycm
