#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "polycm/cm_engine.hpp"
#include "polycm/errors.hpp"
#include "polycm/polygamma.hpp"

using namespace polycm;

namespace {

constexpr double kZeta3 = 1.2020569031595942853997;

}  // namespace

TEST_CASE("f_value examples") {
  const double pi2_6 = std::numbers::pi * std::numbers::pi / 6;

  const EvalResult f12 = f_value(FamilyIndex(1, 2), 1.0);
  CHECK(std::abs(f12.value - (pi2_6 * pi2_6 - 2 * kZeta3)) <= f12.abs_error + 1e-15);
  CHECK(std::abs(f12.value - 0.30169427795865686) <= 1e-15);
  CHECK(f12.certified_positive());

  const EvalResult f22 = f_value(FamilyIndex(2, 2), 1.0);
  CHECK(std::abs(f22.value - (4 * kZeta3 * kZeta3 - 2 * kZeta3)) <= f22.abs_error + 1e-15);
  CHECK(std::abs(f22.value - 3.376) <= 1e-3);

  // psi''(3) = psi''(1) + 2 + 1/4.
  const double p3 = -2 * kZeta3 + 2.25;
  const EvalResult at3 = f_value(FamilyIndex(2, 2), 3.0);
  CHECK(std::abs(at3.value - (p3 * p3 + p3)) <= at3.abs_error + 1e-15);
  CHECK(std::abs(at3.value + 0.1304) <= 1e-4);
  CHECK(at3.certified_negative());
}

TEST_CASE("f_value against oracle polygamma values") {
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      for (double x : {0.2, 1.7, 12.0}) {
        CAPTURE(m);
        CAPTURE(n);
        CAPTURE(x);
        const oracle::Bracket a = oracle::polygamma(m, x);
        const oracle::Bracket b = oracle::polygamma(n, x);
        const long double expected = a.mid * a.mid + b.mid;
        const long double oracle_err = 2 * std::abs(a.mid) * a.half_width + b.half_width;
        const EvalResult r = f_value(FamilyIndex(m, n), x);
        CHECK(std::abs(r.value - expected) <= r.abs_error + oracle_err);
      }
    }
  }
}

TEST_CASE("f_derivative examples") {
  for (double x : {0.03, 1.0, 7.5}) {
    const EvalResult v = f_value(FamilyIndex(1, 2), x);
    const EvalResult d0 = f_derivative(FamilyIndex(1, 2), 0, x);
    CHECK(v.value == d0.value);
    CHECK(v.abs_error == d0.abs_error);
  }

  const double p1 = polygamma(PolyOrder(1), 1.0).value;
  const double p2 = polygamma(PolyOrder(2), 1.0).value;
  const double p3 = polygamma(PolyOrder(3), 1.0).value;
  const EvalResult d1 = f_derivative(FamilyIndex(1, 2), 1, 1.0);
  CHECK(std::abs(d1.value - (2 * p1 * p2 + p3)) <= d1.abs_error + 1e-14);
  CHECK(d1.certified_negative());

  for (int m = 1; m <= 3; ++m) {
    for (int nu = 1; nu <= 3; ++nu) {
      for (double x : {0.4, 2.0, 9.0}) {
        const double a = polygamma(PolyOrder(m), x).value;
        const double b = polygamma(PolyOrder(m + 1), x).value;
        const double c = polygamma(PolyOrder(2 * nu + 1), x).value;
        const EvalResult d = f_derivative(FamilyIndex(m, 2 * nu), 1, x);
        CHECK(std::abs(d.value - (2 * a * b + c)) <= d.abs_error + 1e-14 * std::abs(c));
      }
    }
  }
}

TEST_CASE("f_derivative follows the Leibniz rule at higher orders") {
  // f'' = psi^(n+2) + 2 psi^(m+1)^2 + 2 psi^(m) psi^(m+2).
  const int m = 2;
  const int n = 3;
  const double x = 1.3;
  const double a = polygamma(PolyOrder(m), x).value;
  const double b = polygamma(PolyOrder(m + 1), x).value;
  const double c = polygamma(PolyOrder(m + 2), x).value;
  const double e = polygamma(PolyOrder(n + 2), x).value;
  const EvalResult d2 = f_derivative(FamilyIndex(m, n), 2, x);
  CHECK(std::abs(d2.value - (e + 2 * b * b + 2 * a * c)) <= d2.abs_error + 1e-13 * std::abs(e));
}

TEST_CASE("finite difference examples") {
  CHECK(finite_difference_crosscheck(FamilyIndex(1, 2), 1, 2.0, 1e-4) <= 1e-6);
  CHECK(finite_difference_crosscheck(FamilyIndex(2, 3), 2, 1.5, 1e-3) <= 1e-4);
  CHECK(finite_difference_crosscheck(FamilyIndex(1, 1), 3, 3.0, 1e-2) <= 1e-3);
}

TEST_CASE("finite difference contract on a random sample") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> xs(1.0, 8.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % 4);
    const int order = 1 + static_cast<int>(rng() % 3);
    const double x = xs(rng);
    const double h = 1e-2;
    CAPTURE(m);
    CAPTURE(n);
    CAPTURE(order);
    CAPTURE(x);
    // Truncation is C h^2 with C ~ |f^{(order+2)}|; rounding ~ u |f| / h^order.
    const double scale = std::abs(f_derivative(FamilyIndex(m, n), order + 2, x - 0.1).value);
    const double fscale = std::abs(f_value(FamilyIndex(m, n), x - 0.1).value);
    const double tolerance = scale * h * h + 1e-14 * fscale / std::pow(h, order);
    CHECK(finite_difference_crosscheck(FamilyIndex(m, n), order, x, h) <= tolerance);
  }
}

TEST_CASE("cm_check examples") {
  const std::vector<double> grid = standard_grid();
  REQUIRE(grid.size() == 200);
  CHECK(grid.front() == doctest::Approx(0.01));
  CHECK(grid.back() == doctest::Approx(100.0));

  const CMReport r12 = cm_check(FamilyIndex(1, 2), 8, grid);
  CHECK(r12.verdict == CMVerdict::consistent_with_cm);
  CHECK(r12.violations == 0);
  CHECK(r12.entries.size() == 9 * 200);

  const CMReport r35 = cm_check(FamilyIndex(3, 5), 6, grid);
  CHECK(r35.verdict == CMVerdict::consistent_with_cm);

  const std::vector<double> around3 = {2.0, 3.0, 4.0};
  const CMReport r22 = cm_check(FamilyIndex(2, 2), 0, around3);
  CHECK(r22.verdict == CMVerdict::violation);
  REQUIRE(r22.first_violation);
  CHECK(r22.first_violation->order == 0);
  CHECK(r22.first_violation->x == 2.0);
  CHECK(r22.first_violation->signed_value.certified_negative());
}

TEST_CASE("odd-n members are positive and never violate") {
  const std::vector<double> grid = log_grid(0.01, 100.0, 60);
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 11; n += 2) {
      CAPTURE(m);
      CAPTURE(n);
      const CMReport r = cm_check(FamilyIndex(m, n), 4, grid);
      CHECK(r.violations == 0);
      for (double x : grid) {
        CHECK(f_value(FamilyIndex(m, n), x).certified_positive());
      }
    }
  }
}

TEST_CASE("inconclusive points are never violations") {
  // Near the zero of f_{2,2} between 1 and 3 some points may be undecided; none
  // of them may be counted as a violation unless certified negative.
  const std::vector<double> grid = linear_grid(1.0, 3.0, 400);
  const CMReport r = cm_check(FamilyIndex(2, 2), 0, grid);
  for (const CMEntry& e : r.entries) {
    if (e.status == EntryStatus::violation) {
      CHECK(e.signed_value.certified_negative());
    }
    if (e.status == EntryStatus::positive) {
      CHECK(e.signed_value.value >= 0);
    }
  }
}

TEST_CASE("decreasing shifts for CM members") {
  for (const FamilyIndex idx : {FamilyIndex(1, 2), FamilyIndex(1, 1), FamilyIndex(3, 5)}) {
    for (double x : log_grid(0.01, 100.0, 40)) {
      const EvalResult a = f_value(idx, x);
      const EvalResult b = f_value(idx, x + 1);
      const EvalResult c = f_value(idx, x + 2);
      CHECK((a - b).certified_positive());
      CHECK((b - c).certified_positive());
    }
  }
}

TEST_CASE("shift difference residuals") {
  CHECK(shift_difference_kernel_check(1.0) <= 1e-8);
  CHECK(shift_difference_kernel_check(5.0) <= 1e-9);
  CHECK(shift_difference_kernel_check(0.5) <= 1e-7);
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    const ShiftDifferenceResiduals r = shift_difference_residuals(x);
    CHECK(r.max() == shift_difference_kernel_check(x));
    CHECK(r.closed_form <= 1e-8);
    CHECK(r.quadrature <= 1e-8);
  }
}

TEST_CASE("telescoping examples") {
  const std::vector<double> one = {1.0};
  const TelescopingReport r10 = telescoping_check(10, one);
  CHECK(r10.max_identity_residual() <= 1e-10);

  const TelescopingReport r1000 = telescoping_check(1000, one);
  CHECK(r1000.max_identity_residual() <= 1e-10);
  CHECK(std::abs(r1000.rows[0].remainders.back().value) < 1e-5);
  CHECK(r1000.all_remainders_decreasing());

  const std::vector<double> half = {0.5};
  const TelescopingReport r = telescoping_check(100, half);
  const auto& rem = r.rows[0].remainders;
  CHECK(std::abs(rem[1].value) + rem[1].abs_error < std::abs(rem[0].value) - rem[0].abs_error);
}

TEST_CASE("cm_engine error paths") {
  CHECK_THROWS_AS(FamilyIndex(0, 1), DomainError);
  CHECK_THROWS_AS(FamilyIndex(1, 0), DomainError);
  CHECK_THROWS_AS(f_value(FamilyIndex(1, 2), 0.0), DomainError);
  CHECK_THROWS_AS(f_derivative(FamilyIndex(1, 2), -1, 1.0), DomainError);
  CHECK_THROWS_AS(f_derivative(FamilyIndex(1, 2), 70, 1.0), CapabilityError);
  CHECK_THROWS_AS(finite_difference_crosscheck(FamilyIndex(1, 2), 2, 0.001, 0.01), DomainError);
  const std::vector<double> bad = {2.0, 1.0};
  CHECK_THROWS_AS(cm_check(FamilyIndex(1, 2), 2, bad), DomainError);
  CHECK_THROWS_AS(telescoping_check(0, std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(log_grid(-1.0, 2.0, 10), DomainError);
  CHECK_THROWS_AS(log_grid(1.0, 2.0, 1), DomainError);
}
