#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "isospec/grid.hpp"
#include "isospec/hydrogen.hpp"
#include "isospec/seeds.hpp"

using namespace isospec;

TEST_CASE("energy ladder values") {
  CHECK(energy_level(0, 1) == -1.0);
  CHECK(energy_level(1, 1) == -0.25);
  CHECK(energy_level(2, 1) == doctest::Approx(-1.0 / 9.0).epsilon(1e-16));
  CHECK(energy_level(2, 3) == -0.04);
}

TEST_CASE("factorization energies sit on the ladder") {
  for (int l = 1; l <= 6; ++l) {
    for (int k = -(l - 1); k <= 0; ++k) {
      // Same -1/(l+k)^2 value, reached through the K counter at l+k = l'+K'.
      const int n = l + k;
      CHECK(factorization_energy(l, k) == energy_level(n - 1, 1));
    }
  }
}

TEST_CASE("coulomb potential shape") {
  CHECK(coulomb_potential(0, 2.0) == -1.0);
  CHECK(coulomb_potential(1, 1.0) == 0.0);
  CHECK(coulomb_potential(3, 2.0) == doctest::Approx(12.0 / 4.0 - 1.0).epsilon(1e-15));
  CHECK_THROWS_AS(coulomb_potential(1, 0.0), std::domain_error);
}

TEST_CASE("eigenfunctions are unit normalized") {
  const RadialGrid grid(1e-3, 200.0, 200001);
  for (int l : {0, 1, 2}) {
    for (int n = l + 1; n <= l + 3; ++n) {
      const auto psi = radial_eigenfunction(n, l, grid);
      CHECK(inner_product(psi, psi) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("eigenfunctions have n-l-1 interior nodes") {
  const RadialGrid grid(1e-3, 200.0, 50001);
  for (int l : {0, 1, 2}) {
    for (int n = l + 1; n <= l + 4; ++n) {
      const auto psi = radial_eigenfunction(n, l, grid);
      CHECK(count_sign_changes(psi.values) == n - l - 1);
    }
  }
}

TEST_CASE("eigenfunctions of one l are mutually orthogonal") {
  const RadialGrid grid(1e-3, 300.0, 300001);
  const int l = 2;
  for (int n = l + 1; n <= l + 4; ++n) {
    for (int np = n + 1; np <= l + 4; ++np) {
      const auto a = radial_eigenfunction(n, l, grid);
      const auto b = radial_eigenfunction(np, l, grid);
      CHECK(std::abs(inner_product(a, b)) < 1e-5);
    }
  }
}

TEST_CASE("small-r behavior is r^{l+1}") {
  const RadialGrid grid(1e-4, 50.0, 100001);
  for (int l : {1, 2, 3}) {
    const int n = l + 1;
    const auto psi = radial_eigenfunction(n, l, grid);
    const double r0 = grid.point(0);
    const double r1 = grid.point(10);
    const double ratio = psi.values[10] / psi.values[0];
    const double expected = std::pow(r1 / r0, l + 1);
    CHECK(ratio == doctest::Approx(expected).epsilon(1e-2));
  }
}

TEST_CASE("analytic derivative matches central differences") {
  const RadialGrid grid(1e-3, 80.0, 80001);
  const auto pair = radial_eigenfunction_with_derivative(3, 1, grid);
  const auto fd = central_difference(pair.psi);
  double worst = 0.0;
  for (int i = 1; i + 1 < grid.n_points; ++i) {
    worst = std::max(worst, std::abs(fd.values[i] - pair.dpsi.values[i]));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("eigenfunction satisfies its radial equation pointwise") {
  const RadialGrid grid(1e-3, 60.0, 60001);
  const int n = 2, l = 1;
  const auto psi = radial_eigenfunction(n, l, grid);
  const double E = energy_level(l, n - l);
  // -psi'' + V psi - E psi, second derivative by central differences.
  double worst = 0.0;
  for (int i = 1; i + 1 < grid.n_points; ++i) {
    const double d2 =
        (psi.values[i - 1] - 2.0 * psi.values[i] + psi.values[i + 1]) / (grid.h * grid.h);
    const double res =
        -d2 + coulomb_potential(l, grid.point(i)) * psi.values[i] - E * psi.values[i];
    worst = std::max(worst, std::abs(res));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("quantum number validation") {
  CHECK_THROWS_AS(QuantumNumbers(-1, 1), std::domain_error);
  CHECK_THROWS_AS(QuantumNumbers(0, 0), std::domain_error);
  CHECK(QuantumNumbers(2, 3).n == 5);
  CHECK_THROWS_AS(radial_eigenfunction(1, 1, RadialGrid(1e-3, 10.0, 101)), std::domain_error);
}
