#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "isospec/hydrogen.hpp"
#include "isospec/seeds.hpp"

using namespace isospec;

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < n; ++i) out[i] = lo * std::exp(ratio * i / (n - 1));
  return out;
}

std::vector<double> in_domain_lambdas(int k) {
  if (std::abs(k) % 2 == 1) return {1.1, 1.5, 2.0, 5.0, 20.0};
  return {-3.0, -1.0, 0.0, 0.5, 0.9};
}

}  // namespace

TEST_CASE("phi starts at one") {
  for (int l : {1, 2, 4}) {
    for (int k = -(l - 1); k <= 0; ++k) {
      const double lam = in_domain_lambdas(k)[2];
      const auto seed = make_seed(l, k, lam);
      CHECK(phi(seed, 1e-10).value == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("lambda zero reduces to the bare hypergeometric seed") {
  // k = 0, lambda = 0: Phi is identically 1 and beta = l/r - 1/l exactly.
  for (int l : {1, 2, 3, 5}) {
    const auto seed = make_seed(l, 0, 0.0);
    for (double r : {0.01, 0.5, 3.0, 40.0}) {
      const auto ph = phi(seed, r);
      CHECK(ph.value == 1.0);
      CHECK(ph.deriv == 0.0);
      CHECK(ph.deriv2 == 0.0);
      const auto b = beta(seed, r);
      CHECK(b.value == doctest::Approx(l / r - 1.0 / l).epsilon(1e-15));
      CHECK(b.deriv == doctest::Approx(-l / (r * r)).epsilon(1e-15));
    }
  }
}

TEST_CASE("beta solves its Riccati equation across the family sweep") {
  const auto rs = log_spaced(1e-2, 100.0, 200);
  for (int l = 2; l <= 6; ++l) {
    for (int k = -(l - 1); k <= 0; ++k) {
      for (double lam : in_domain_lambdas(k)) {
        const auto seed = make_seed(l, k, lam);
        double worst = 0.0;
        for (double r : rs) {
          const auto b = beta(seed, r);
          const double lhs = -b.deriv + b.value * b.value;
          const double rhs = coulomb_potential(l, r) - seed.epsilon;
          const double scale = std::max({1.0, std::abs(b.value * b.value), std::abs(rhs)});
          worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        CHECK(worst < 1e-7);
      }
    }
  }
}

TEST_CASE("seed solves the radial equation at its factorization energy") {
  const auto seed = make_seed(2, -1, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double r = 0.1 + (50.0 - 0.1) * i / 99.0;
    const auto u = seed_u(seed, r);
    const double lhs = -u.deriv2 + coulomb_potential(2, r) * u.value;
    const double rhs = seed.epsilon * u.value;
    const double scale = std::max({1.0, std::abs(u.deriv2), std::abs(rhs)});
    CHECK(std::abs(lhs - rhs) / scale < 1e-6);
  }
}

TEST_CASE("beta is the negated logarithmic derivative of the seed") {
  const std::vector<std::tuple<int, int, double>> cases = {{2, -1, 2.0}, {3, 0, 0.5}, {4, -2, -1.0}};
  for (const auto& [l, k, lam] : cases) {
    const auto seed = make_seed(l, k, lam);
    for (double r : {0.05, 0.7, 4.0, 20.0}) {
      const auto u = seed_u(seed, r);
      const auto b = beta(seed, r);
      CHECK(b.value == doctest::Approx(-u.deriv / u.value)
                           .epsilon(1e-10)
                           .scale(std::max(1.0, std::abs(b.value))));
    }
  }
}

TEST_CASE("nu coefficient closed value") {
  // |k|! lambda / ((2l+1)! (-2l)_{|k|}) at l=2, k=-1, lambda=2: 2/(120 * -4).
  const auto seed = make_seed(2, -1, 2.0);
  CHECK(seed.nu == doctest::Approx(-1.0 / 240.0).epsilon(1e-15));
  CHECK(seed.epsilon == -1.0);
}

TEST_CASE("phi limit at large r for the isospectral stage is 1 - lambda") {
  for (double lam : {-1.0, 0.5}) {
    const auto seed = make_seed(2, 0, lam);
    CHECK(phi(seed, 300.0).value == doctest::Approx(1.0 - lam).epsilon(1e-8));
  }
}

TEST_CASE("in-domain lambdas keep phi positive, out-of-domain ones do not") {
  for (int l = 2; l <= 4; ++l) {
    for (int k = -(l - 1); k <= 0; ++k) {
      for (double lam : in_domain_lambdas(k)) {
        const auto scan = phi_positivity_scan(make_seed(l, k, lam), 300.0, 4000);
        CHECK(scan.all_positive);
      }
    }
  }
  const auto bad = phi_positivity_scan(make_seed_unchecked(2, -1, 0.0), 300.0, 4000);
  CHECK_FALSE(bad.all_positive);
  CHECK(bad.sign_change_r == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("distinct lambdas give distinct members") {
  const auto a = make_seed(2, -1, 1.5);
  const auto b = make_seed(2, -1, 5.0);
  CHECK(std::abs(phi(a, 2.0).value - phi(b, 2.0).value) > 1e-6);
}

TEST_CASE("independent integral form of phi, isospectral stage") {
  // Lower-incomplete-gamma route, nothing shared with the series path.
  for (double lam : {-1.0, 0.5, 0.9}) {
    for (double r : {0.5, 3.0, 10.0}) {
      const auto seed = make_seed(2, 0, lam);
      const double ref = phi_integral_form(2, 0, lam, r);
      CHECK(phi(seed, r).value ==
            doctest::Approx(ref).epsilon(1e-8).scale(std::max(1.0, std::abs(ref))));
    }
  }
}

TEST_CASE("independent integral form of phi, first shifted stage") {
  // Finite-part quadrature route with the removable point at r = l(l-1).
  const auto seed = make_seed(2, -1, 2.0);
  for (double r : {1.0, 4.0, 8.0}) {
    const double ref = phi_integral_form(2, -1, 2.0, r);
    CHECK(phi(seed, r).value ==
          doctest::Approx(ref).epsilon(1e-6).scale(std::max(1.0, std::abs(ref))));
  }
  CHECK_THROWS_AS(phi_integral_form(2, -1, 2.0, 1.95), std::out_of_range);
  CHECK_THROWS_AS(phi_integral_form(3, -2, 0.5, 1.0), std::domain_error);
}

TEST_CASE("seed construction rejects violations with stated inequalities") {
  CHECK_THROWS_AS(make_seed(2, -1, 0.0), std::domain_error);   // odd |k| needs (1, inf)
  CHECK_THROWS_AS(make_seed(2, -1, 1.0), std::domain_error);   // boundary excluded
  CHECK_THROWS_AS(make_seed(2, 0, 1.5), std::domain_error);    // even |k| needs (-inf, 1)
  CHECK_THROWS_AS(make_seed(2, 0, 1.0), std::domain_error);    // boundary excluded
  CHECK_THROWS_AS(make_seed(0, 0, 0.0), std::domain_error);    // l >= 1
  CHECK_THROWS_AS(make_seed(2, -2, 0.5), std::domain_error);   // k below -(l-1)
  CHECK_THROWS_AS(make_seed(2, 1, 0.5), std::domain_error);    // k above 0
  CHECK_NOTHROW(make_seed(1, 0, 0.5));
  CHECK_NOTHROW(make_seed_unchecked(2, -1, 0.0));              // domain check skipped
  CHECK_THROWS_AS(make_seed_unchecked(2, -2, 0.5), std::domain_error);  // ranges still apply
}

TEST_CASE("lambda domain table") {
  CHECK(lambda_domain(0).contains(0.0));
  CHECK(lambda_domain(0).contains(-100.0));
  CHECK_FALSE(lambda_domain(0).contains(1.0));
  CHECK_FALSE(lambda_domain(0).contains(2.0));
  CHECK(lambda_domain(-1).contains(2.0));
  CHECK_FALSE(lambda_domain(-1).contains(1.0));
  CHECK_FALSE(lambda_domain(-1).contains(0.5));
  CHECK(lambda_domain(-2).contains(0.5));
  CHECK(lambda_domain(-3).contains(100.0));
}
