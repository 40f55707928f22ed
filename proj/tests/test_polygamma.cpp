#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "polycm/errors.hpp"
#include "polycm/polygamma.hpp"
#include "polycm/summation.hpp"

using namespace polycm;

namespace {

// Library result and oracle bracket must overlap.
void check_against(const EvalResult& r, const oracle::Bracket& b) {
  const long double gap = std::abs(static_cast<long double>(r.value) - b.mid);
  CHECK(gap <= static_cast<long double>(r.abs_error) + b.half_width);
}

}  // namespace

TEST_CASE("euler gamma constant matches its defining series") {
  const oracle::Bracket g = oracle::euler_gamma();
  CHECK(g.half_width < 1e-12L);
  CHECK(std::abs(static_cast<long double>(kEulerGamma) - g.mid) <= g.half_width + 1e-17L);
}

TEST_CASE("bernoulli table matches 2 zeta(2j)/(2 pi)^{2j}") {
  for (int j = 1; j <= kBernoulliTableSize; ++j) {
    const oracle::Bracket b = oracle::bernoulli_over_factorial(j);
    CAPTURE(j);
    CHECK(std::abs(bernoulli_over_factorial(j) - b.mid) <= 1e-14L * std::abs(b.mid));
  }
  CHECK_THROWS_AS(bernoulli_over_factorial(0), DomainError);
  CHECK_THROWS_AS(bernoulli_over_factorial(kBernoulliTableSize + 1), DomainError);
}

TEST_CASE("digamma examples") {
  const EvalResult at1 = digamma(1.0);
  CHECK(at1.abs_error <= 1e-12);
  CHECK(std::abs(at1.value + kEulerGamma) <= at1.abs_error + 1e-16);

  const EvalResult at2 = digamma(2.0);
  CHECK(std::abs(at2.value - (at1.value + 1.0)) <= at1.abs_error + at2.abs_error + 4e-16);

  const double x = 1e6;
  const EvalResult big = digamma(x);
  CHECK(big.value - big.abs_error > std::log(x) - 1.0 / x);
  CHECK(big.value + big.abs_error < std::log(x) - 0.5 / x);

  const EvalResult half = digamma(0.5);
  CHECK(std::abs(half.value - (-kEulerGamma - 2.0 * std::numbers::ln2)) <= half.abs_error + 1e-15);
}

TEST_CASE("digamma agrees with the asymptotic oracle") {
  for (double x : {1e-3, 0.1, 0.37, 1.0, 2.5, 9.99, 10.0, 47.0, 1e3, 1e8}) {
    CAPTURE(x);
    const EvalResult r = digamma(x);
    CHECK(r.abs_error <= std::max(1e-12, 1e-13 * std::abs(r.value)));
    check_against(r, oracle::digamma(x));
  }
}

TEST_CASE("polygamma examples") {
  const EvalResult t1 = polygamma(PolyOrder(1), 1.0);
  CHECK(t1.abs_error <= 1e-12);
  CHECK(std::abs(t1.value - std::numbers::pi * std::numbers::pi / 6) <= t1.abs_error + 4e-16);

  const EvalResult t2 = polygamma(PolyOrder(2), 1.0);
  CHECK(std::abs(t2.value + 2.4041138063191885) <= t2.abs_error + 1e-15);

  CHECK(polygamma(PolyOrder(3), 0.5).certified_positive());

  const EvalResult half = polygamma(PolyOrder(1), 0.5);
  CHECK(std::abs(half.value - std::numbers::pi * std::numbers::pi / 2) <= half.abs_error + 1e-15);
}

TEST_CASE("polygamma agrees with brute-force sums") {
  for (int n = 1; n <= 8; ++n) {
    for (double x : {0.05, 0.5, 1.0, 3.25, 10.0, 120.0}) {
      CAPTURE(n);
      CAPTURE(x);
      const EvalResult r = polygamma(PolyOrder(n), x);
      check_against(r, oracle::polygamma(n, x));
    }
  }
}

TEST_CASE("psi dispatches on the order") {
  CHECK(psi(PolyOrder(0), 3.0).value == digamma(3.0).value);
  CHECK(psi(PolyOrder(4), 3.0).value == polygamma(PolyOrder(4), 3.0).value);
}

TEST_CASE("hurwitz zeta at a = 1 gives zeta(s)") {
  const EvalResult z2 = hurwitz_zeta(2, 1.0);
  CHECK(std::abs(z2.value - std::numbers::pi * std::numbers::pi / 6) <= z2.abs_error + 4e-16);
  const EvalResult z4 = hurwitz_zeta(4, 1.0);
  CHECK(std::abs(z4.value - std::pow(std::numbers::pi, 4) / 90) <= z4.abs_error + 4e-16);
  CHECK_THROWS_AS(hurwitz_zeta(1, 1.0), DomainError);
}

TEST_CASE("quadrature route examples") {
  for (auto [n, x] : {std::pair{1, 1.0}, std::pair{6, 10.0}}) {
    const EvalResult s = polygamma(PolyOrder(n), x);
    const EvalResult q = polygamma_quadrature(PolyOrder(n), x);
    CHECK(std::abs(s.value - q.value) <= 1e-9 * std::abs(s.value));
  }
  const double x = 50.0;
  const EvalResult q = polygamma_quadrature(PolyOrder(1), x);
  CHECK(q.value - q.abs_error > 1.0 / x + 1.0 / (2 * x * x));
  CHECK(q.value + q.abs_error < 1.0 / x + 1.0 / (x * x));
}

TEST_CASE("series and quadrature routes agree within their bounds") {
  for (int n = 1; n <= 8; ++n) {
    for (double x : {0.5, 1.0, 2.0, 10.0}) {
      CAPTURE(n);
      CAPTURE(x);
      const EvalResult s = polygamma(PolyOrder(n), x);
      const EvalResult q = polygamma_quadrature(PolyOrder(n), x);
      CHECK(agree(s, q));
      CHECK(std::abs(s.value - q.value) <= 1e-9 * std::abs(s.value));
    }
  }
}

TEST_CASE("recurrence residual examples") {
  CHECK(recurrence_residual(PolyOrder(2), 1.0) <= 1e-12);
  CHECK(std::abs(polygamma(PolyOrder(1), 2.0).value - (polygamma(PolyOrder(1), 1.0).value - 1.0)) <=
        1e-12);
  CHECK(recurrence_residual(PolyOrder(1), 3.0) <= 1e-11);
  CHECK(recurrence_residual(PolyOrder(5), 0.25) <= 1e-10);
}

TEST_CASE("sign and decay properties on random samples") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> log_x(std::log(1e-2), std::log(1e2));
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const double x = std::exp(log_x(rng));
    CAPTURE(n);
    CAPTURE(x);
    const EvalResult r = polygamma(PolyOrder(n), x);
    if (n % 2 == 1) {
      CHECK(r.certified_positive());
    } else {
      CHECK(r.certified_negative());
    }
    const EvalResult further = polygamma(PolyOrder(n), x * 1.01);
    CHECK(std::abs(further.value) + further.abs_error < std::abs(r.value) - r.abs_error);
  }
}

TEST_CASE("a successful result always meets the requested budget") {
  for (double target : {1e-10, 1e-13, 1e-15}) {
    PrecisionConfig cfg;
    cfg.target_abs_error = target;
    cfg.target_rel_error = target;
    for (double x : {0.01, 0.5, 2.0, 30.0, 1e4}) {
      for (int n = 0; n <= 6; ++n) {
        CAPTURE(target);
        CAPTURE(x);
        CAPTURE(n);
        try {
          const EvalResult r = psi(PolyOrder(n), x, cfg);
          CHECK(r.abs_error <= cfg.budget_for(r.value));
        } catch (const ConvergenceError& e) {
          CHECK(e.best_bound() > cfg.target_abs_error);
        }
      }
    }
  }
  PrecisionConfig reachable;
  reachable.target_abs_error = 1e-14;
  reachable.target_rel_error = 1e-14;
  CHECK_NOTHROW(polygamma(PolyOrder(2), 0.5, reachable));
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(PolyOrder(-1), DomainError);
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(-1.0), DomainError);
  CHECK_THROWS_AS(digamma(std::nan("")), DomainError);
  CHECK_THROWS_AS(polygamma(PolyOrder(0), 1.0), DomainError);
  CHECK_THROWS_AS(polygamma_quadrature(PolyOrder(2), -3.0), DomainError);
  CHECK_THROWS_AS(recurrence_residual(PolyOrder(0), 1.0), DomainError);

  PrecisionConfig bad;
  bad.target_abs_error = 0.0;
  CHECK_THROWS_AS(digamma(1.0, bad), DomainError);

  PrecisionConfig starved;
  starved.max_series_terms = 3;
  CHECK_THROWS_AS(digamma(1e-6, starved), ConvergenceError);
  try {
    digamma(1e-6, starved);
  } catch (const ConvergenceError& e) {
    CHECK(e.best_bound() > 0);
  }
}

TEST_CASE("compensated sum recovers cancelled low-order bits") {
  CompensatedSum s;
  s.add(1.0, 0.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16, 0.0);
  s.add(-1.0, 0.0);
  // Naive summation loses every 1e-16 against the leading 1.
  CHECK(std::abs(s.value() - 1e-13) <= 1e-24);
  CHECK(s.count() == 1002);
}
