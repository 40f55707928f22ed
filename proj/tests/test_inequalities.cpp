#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "polycm/cm_engine.hpp"
#include "polycm/errors.hpp"
#include "polycm/inequalities.hpp"

using namespace polycm;

TEST_CASE("psi log bounds examples") {
  const InequalityResult r1 = psi_log_bounds_check(1.0);
  CHECK(r1.k == 0);
  CHECK(r1.lower == -1.0);
  CHECK(r1.upper == -0.5);
  CHECK(r1.middle.value == doctest::Approx(-0.5772156649015329).epsilon(1e-14));
  CHECK(r1.passed);
  CHECK_FALSE(r1.failed);

  const InequalityResult r100 = psi_log_bounds_check(100.0);
  CHECK(r100.passed);
  CHECK(r100.lower_margin > 0);
  CHECK(r100.lower_margin < r1.lower_margin);
  CHECK(r100.upper_margin < r1.upper_margin);

  CHECK(psi_log_bounds_check(0.1).passed);
}

TEST_CASE("polygamma bounds examples") {
  const InequalityResult r = polygamma_bounds_check(1, 1.0);
  CHECK(r.lower == 1.5);
  CHECK(r.upper == 2.0);
  CHECK(std::abs(r.middle.value - std::numbers::pi * std::numbers::pi / 6) <= r.middle.abs_error + 4e-16);
  CHECK(r.passed);

  const InequalityResult r2 = polygamma_bounds_check(2, 1.0);
  CHECK(r2.lower == 2.0);
  CHECK(r2.upper == 3.0);
  CHECK(r2.middle.value == doctest::Approx(2.4041138063191885).epsilon(1e-14));
  CHECK(r2.passed);

  CHECK(polygamma_bounds_check(4, 0.5).passed);
}

TEST_CASE("the middle term matches the oracle") {
  for (int k = 1; k <= 6; ++k) {
    for (double x : {0.05, 1.0, 40.0}) {
      const oracle::Bracket b = oracle::polygamma(k, x);
      const InequalityResult r = polygamma_bounds_check(k, x);
      CHECK(std::abs(r.middle.value - std::abs(b.mid)) <= r.middle.abs_error + b.half_width);
    }
  }
}

TEST_CASE("bounds suite") {
  const std::vector<double> grid = log_grid(0.05, 100.0, 100);
  const BoundsSummary s = bounds_suite(8, grid);
  CHECK(s.psi_results.size() == 100);
  CHECK(s.polygamma_results.size() == 800);
  CHECK(s.failures == 0);
  CHECK(s.inconclusive.empty());
  CHECK(s.all_passed());
  REQUIRE(s.min_lower_margin);
  CHECK(*s.min_lower_margin > 0);
  CHECK(*s.min_upper_margin > 0);
  for (const InequalityResult& r : s.polygamma_results) {
    CHECK(r.lower_margin > 2 * r.margin_error);
    CHECK(r.upper_margin > 2 * r.margin_error);
  }
  // k-major ordering.
  CHECK(s.polygamma_results[0].k == 1);
  CHECK(s.polygamma_results[100].k == 2);
  CHECK(s.polygamma_results[100].x == grid[0]);

  const std::vector<double> one = {1.0};
  const BoundsSummary single = bounds_suite(1, one);
  REQUIRE(single.polygamma_results.size() == 1);
  const InequalityResult direct = polygamma_bounds_check(1, 1.0);
  CHECK(single.polygamma_results[0].middle.value == direct.middle.value);
  CHECK(single.polygamma_results[0].lower_margin == direct.lower_margin);
  CHECK(single.polygamma_results[0].upper_margin == direct.upper_margin);

  const BoundsSummary empty = bounds_suite(3, std::vector<double>{});
  CHECK(empty.size() == 0);
  CHECK(empty.all_passed());
  CHECK_FALSE(empty.min_lower_margin);
}

TEST_CASE("inequality error paths") {
  CHECK_THROWS_AS(psi_log_bounds_check(0.0), DomainError);
  CHECK_THROWS_AS(polygamma_bounds_check(0, 1.0), DomainError);
  CHECK_THROWS_AS(polygamma_bounds_check(2, -1.0), DomainError);
  CHECK_THROWS_AS(bounds_suite(0, std::vector<double>{1.0}), DomainError);
}
