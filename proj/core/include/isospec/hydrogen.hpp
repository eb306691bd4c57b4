#ifndef ISOSPEC_HYDROGEN_HPP
#define ISOSPEC_HYDROGEN_HPP

// Radial Coulomb problem in Rydberg-like units (lengths in Bohr radii,
// energies in Rydbergs): H_l = -d^2/dr^2 + l(l+1)/r^2 - 2/r, with bound
// levels E = -1/(l+K)^2, K = 1, 2, ...

#include "isospec/grid.hpp"

namespace isospec {

struct QuantumNumbers {
  int l = 0;  // orbital index, >= 0
  int K = 1;  // level counter within fixed l, >= 1
  int n = 1;  // principal index, n = l + K

  QuantumNumbers(int l_, int K_);
};

// Effective radial potential l(l+1)/r^2 - 2/r; r must be > 0.
double coulomb_potential(int l, double r);

// E_{lK} = -1/(l+K)^2.
double energy_level(int l, int K);

// Bound radial eigenfunction psi_{nl} sampled on the grid and normalized so
// the trapezoid quadrature of psi^2 equals 1.  Polynomial part by Laguerre
// three-term recurrence.
GridFunction radial_eigenfunction(int n, int l, const RadialGrid& grid);

// Same eigenfunction together with its analytic radial derivative, both
// scaled by the one numeric normalization constant.
struct EigenfunctionPair {
  GridFunction psi;
  GridFunction dpsi;
};
EigenfunctionPair radial_eigenfunction_with_derivative(int n, int l, const RadialGrid& grid);

}  // namespace isospec

#endif
