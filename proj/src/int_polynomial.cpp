#include "polycm/int_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polycm/errors.hpp"
#include "polycm/summation.hpp"

namespace polycm {

BigInt big_factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}

BigInt big_binomial(unsigned n, unsigned k) {
  if (k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return c;
}

IntPolynomial& IntPolynomial::add_term(const BigInt& coeff, unsigned power) {
  if (coeff == 0) {
    return *this;
  }
  auto [it, inserted] = terms_.try_emplace(power, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
  return *this;
}

BigInt IntPolynomial::coefficient(unsigned power) const {
  const auto it = terms_.find(power);
  return it == terms_.end() ? BigInt(0) : it->second;
}

unsigned IntPolynomial::degree() const {
  if (terms_.empty()) {
    throw DomainError("degree of the zero polynomial");
  }
  return terms_.rbegin()->first;
}

unsigned IntPolynomial::lowest_power() const {
  if (terms_.empty()) {
    throw DomainError("lowest power of the zero polynomial");
  }
  return terms_.begin()->first;
}

BigInt IntPolynomial::evaluate_exact(const BigInt& x) const {
  BigInt total = 0;
  for (const auto& [power, coeff] : terms_) {
    total += coeff * boost::multiprecision::pow(x, power);
  }
  return total;
}

EvalResult IntPolynomial::evaluate_scaled(double x, int shift) const {
  if (!(x > 0)) {
    throw DomainError("IntPolynomial::evaluate_scaled requires x > 0");
  }
  CompensatedSum sum;
  for (const auto& [power, coeff] : terms_) {
    const int exponent = static_cast<int>(power) - shift;
    const double term = coeff.convert_to<double>() * std::pow(x, exponent);
    sum.add(term, (std::abs(exponent) + 4) * kUnitRoundoff * std::abs(term));
  }
  EvalResult r = sum.result();
  if (!std::isfinite(r.value)) {
    throw RangeError("IntPolynomial::evaluate_scaled: value not representable in double");
  }
  return r;
}

std::string IntPolynomial::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [power, coeff] = *it;
    const BigInt magnitude = coeff < 0 ? BigInt(-coeff) : coeff;
    if (first) {
      out << (coeff < 0 ? "-" : "");
    } else {
      out << (coeff < 0 ? " - " : " + ");
    }
    if (magnitude != 1 || power == 0) {
      out << magnitude;
    }
    if (power >= 1) {
      out << "x";
    }
    if (power >= 2) {
      out << "^" << power;
    }
    first = false;
  }
  return out.str();
}

}  // namespace polycm
