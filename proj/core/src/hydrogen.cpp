#include "isospec/hydrogen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace isospec {

namespace {

// Associated Laguerre L_k^alpha(x) by the stable ascending recurrence
// (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}.
double laguerre(int k, int alpha, double x) {
  if (k < 0) return 0.0;
  double lm1 = 1.0;
  if (k == 0) return lm1;
  double l0 = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double lp = ((2.0 * j + 1.0 + alpha - x) * l0 - (j + alpha) * lm1) / (j + 1.0);
    lm1 = l0;
    l0 = lp;
  }
  return l0;
}

void check_nl(int n, int l) {
  if (l < 0) throw std::domain_error("hydrogen: l must be >= 0");
  if (n < l + 1)
    throw std::domain_error("hydrogen: need n >= l+1, got n = " + std::to_string(n) +
                            ", l = " + std::to_string(l));
}

}  // namespace

QuantumNumbers::QuantumNumbers(int l_, int K_) : l(l_), K(K_), n(l_ + K_) {
  if (l < 0) throw std::domain_error("QuantumNumbers: l must be >= 0");
  if (K < 1) throw std::domain_error("QuantumNumbers: K must be >= 1");
}

double coulomb_potential(int l, double r) {
  if (l < 0) throw std::domain_error("coulomb_potential: l must be >= 0");
  if (!(r > 0.0)) throw std::domain_error("coulomb_potential: r must be > 0");
  return static_cast<double>(l) * (l + 1) / (r * r) - 2.0 / r;
}

double energy_level(int l, int K) {
  QuantumNumbers qn(l, K);
  const double n = qn.n;
  return -1.0 / (n * n);
}

EigenfunctionPair radial_eigenfunction_with_derivative(int n, int l, const RadialGrid& grid) {
  check_nl(n, l);
  const int kdeg = n - l - 1;  // polynomial degree
  const int alpha = 2 * l + 1;
  const double inv_n = 1.0 / n;

  std::vector<double> psi(grid.n_points), dpsi(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double r = grid.point(i);
    const double x = 2.0 * r * inv_n;
    const double amp = std::pow(r, l + 1) * std::exp(-r * inv_n);
    const double poly = laguerre(kdeg, alpha, x);
    // dL/dx = -L_{k-1}^{alpha+1}
    const double dpoly = (kdeg >= 1) ? -laguerre(kdeg - 1, alpha + 1, x) * 2.0 * inv_n : 0.0;
    psi[i] = amp * poly;
    dpsi[i] = amp * (((l + 1) / r - inv_n) * poly + dpoly);
  }

  GridFunction f(grid, std::move(psi));
  const double norm = l2_norm(f);
  if (!(norm > 0.0)) throw std::runtime_error("radial_eigenfunction: zero norm on grid");
  for (auto& v : f.values) v /= norm;
  for (auto& v : dpsi) v /= norm;
  return EigenfunctionPair{std::move(f), GridFunction(grid, std::move(dpsi))};
}

GridFunction radial_eigenfunction(int n, int l, const RadialGrid& grid) {
  return radial_eigenfunction_with_derivative(n, l, grid).psi;
}

}  // namespace isospec
