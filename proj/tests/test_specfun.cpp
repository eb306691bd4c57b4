#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "isospec/specfun.hpp"

using namespace isospec;

namespace {

// Independent long-double evaluation of the terminating series, term by
// term from the definition; nothing shared with the library path.
long double terminating_oracle(int p, double b, double z) {
  long double sum = 0.0L;
  for (int n = 0; n <= p; ++n) {
    long double num = 1.0L;
    for (int i = 0; i < n; ++i) num *= static_cast<long double>(-p + i);
    long double den = 1.0L;
    for (int i = 0; i < n; ++i) den *= static_cast<long double>(b) + i;
    long double fact = 1.0L;
    for (int i = 2; i <= n; ++i) fact *= i;
    long double zp = 1.0L;
    for (int i = 0; i < n; ++i) zp *= static_cast<long double>(z);
    sum += num / den * zp / fact;
  }
  return sum;
}

// Direct long-double series for moderate |z|, alternating terms included.
long double direct_oracle(double a, double b, double z) {
  long double sum = 1.0L;
  long double term = 1.0L;
  for (int n = 1; n <= 400; ++n) {
    term *= (static_cast<long double>(a) + n - 1) / (static_cast<long double>(b) + n - 1) *
            static_cast<long double>(z) / n;
    sum += term;
    if (std::abs(static_cast<double>(term)) < 1e-20 * std::abs(static_cast<double>(sum))) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("pochhammer basics") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(3.0, 4) == doctest::Approx(360.0).epsilon(1e-15));
  CHECK(pochhammer(-2.0, 3) == 0.0);
  CHECK(pochhammer(-5.0, 3) == doctest::Approx(-60.0).epsilon(1e-15));
  CHECK_THROWS_AS(pochhammer(1.0, -1), std::domain_error);
}

TEST_CASE("factorial basics") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(1) == 1.0);
  CHECK(factorial(5) == 120.0);
  CHECK(factorial(10) == 3628800.0);
  CHECK_THROWS_AS(factorial(-1), std::domain_error);
  CHECK_THROWS_AS(factorial(171), std::domain_error);
}

TEST_CASE("terminating series matches explicit polynomial over negative integer b") {
  // The regime the seeds live in: a = -p, b = -2l, p < 2l.
  for (int l = 2; l <= 6; ++l) {
    for (int p = 0; p <= std::min(2 * l - 1, 8); ++p) {
      for (int zi = 0; zi <= 25; ++zi) {
        const double z = -50.0 + 2.0 * zi;
        const auto res = kummer_m(-p, -2.0 * l, z);
        REQUIRE(res.converged);
        CHECK(res.terms_used == p + 1);
        const double ref = static_cast<double>(terminating_oracle(p, -2.0 * l, z));
        CHECK(res.value ==
              doctest::Approx(ref).epsilon(1e-14).scale(std::max(1.0, std::abs(ref))));
      }
    }
  }
}

TEST_CASE("closed forms of low-order cases") {
  // M(1,2,z) = (e^z - 1)/z
  CHECK(kummer_m(1.0, 2.0, -0.5).value ==
        doctest::Approx((std::exp(-0.5) - 1.0) / -0.5).epsilon(1e-14));
  CHECK(kummer_m(1.0, 2.0, 2.0).value ==
        doctest::Approx((std::exp(2.0) - 1.0) / 2.0).epsilon(1e-14));
  // M(a,a,z) = e^z
  CHECK(kummer_m(3.0, 3.0, 1.7).value == doctest::Approx(std::exp(1.7)).epsilon(1e-14));
  // Exact rational value by hand: 1 + 2/3 + 2/15
  CHECK(kummer_m(-2.0, -6.0, 2.0).value == doctest::Approx(1.8).epsilon(1e-15));
}

TEST_CASE("negative-argument path agrees with long-double alternating series") {
  for (double a : {0.5, 1.3, 2.5}) {
    for (double b : {2.0, 3.5, 8.0}) {
      for (double z : {-8.0, -3.0, -1.0, -0.1}) {
        const auto res = kummer_m(a, b, z);
        REQUIRE(res.converged);
        const double ref = static_cast<double>(direct_oracle(a, b, z));
        CHECK(res.value == doctest::Approx(ref).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("reflection identity between two non-tautological paths") {
  // M(4,6,-1) = e^{-1} M(2,6,1); the right side runs the positive-z series.
  const double lhs = kummer_m(4.0, 6.0, -1.0).value;
  const double rhs = std::exp(-1.0) * kummer_m(2.0, 6.0, 1.0).value;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("z-derivatives agree with finite differences of the value") {
  struct Case {
    double a, b, z;
  };
  for (const Case c : {Case{-3.0, -8.0, -2.5}, Case{1.3, 2.7, -4.0}, Case{0.5, 3.0, 1.5}}) {
    const auto d = kummer_m_derivatives(c.a, c.b, c.z);
    const double h = 1e-5;
    const double fp = kummer_m(c.a, c.b, c.z + h).value;
    const double fm = kummer_m(c.a, c.b, c.z - h).value;
    const double f0 = kummer_m(c.a, c.b, c.z).value;
    CHECK(d.value == f0);
    CHECK(d.dz == doctest::Approx((fp - fm) / (2 * h))
                      .epsilon(1e-6)
                      .scale(std::max(1.0, std::abs(d.dz))));
    CHECK(d.dz2 == doctest::Approx((fp - 2 * f0 + fm) / (h * h))
                       .epsilon(1e-4)
                       .scale(std::max(1.0, std::abs(d.dz2))));
  }
}

TEST_CASE("derivative of the constant case is exactly zero") {
  const auto d = kummer_m_derivatives(0.0, -4.0, 3.0);
  CHECK(d.value == 1.0);
  CHECK(d.dz == 0.0);
  CHECK(d.dz2 == 0.0);
}

TEST_CASE("lower incomplete gamma closed values and monotonicity") {
  CHECK(lower_incomplete_gamma(1, 0.7) == doctest::Approx(1.0 - std::exp(-0.7)).epsilon(1e-15));
  // gamma(3,1) = 2 - 5/e
  CHECK(lower_incomplete_gamma(3, 1.0) ==
        doctest::Approx(2.0 - 5.0 / std::exp(1.0)).epsilon(1e-14));
  double prev = 0.0;
  for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
    const double g = lower_incomplete_gamma(4, x);
    CHECK(g > prev);
    CHECK(g <= factorial(3));
    prev = g;
  }
  CHECK(lower_incomplete_gamma(4, 60.0) == doctest::Approx(factorial(3)).epsilon(1e-14));
}

TEST_CASE("nonpositive integer b without a terminating numerator is rejected") {
  CHECK_THROWS_AS(kummer_m(0.5, -3.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kummer_m(-5.0, -3.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kummer_m(-3.0, -3.0, 1.0), std::domain_error);
  // |a| < |b| terminates safely.
  CHECK_NOTHROW(kummer_m(-2.0, -3.0, 1.0));
}
