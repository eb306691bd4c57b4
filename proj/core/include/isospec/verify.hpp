#ifndef ISOSPEC_VERIFY_HPP
#define ISOSPEC_VERIFY_HPP

// Independent numerical check layer: the partner potentials are sampled
// into a finite-difference operator -d^2/dr^2 + V with Dirichlet ends, and
// the claimed spectra are confirmed by Sturm-sequence eigenvalue counts.
// Nothing here reuses the closed forms it is meant to validate.

#include <functional>
#include <vector>

#include "isospec/families.hpp"
#include "isospec/grid.hpp"
#include "isospec/seeds.hpp"

namespace isospec {

// Symmetric tridiagonal discretization of -d^2/dr^2 + V on a uniform grid,
// Dirichlet values at r_min - h and r_max + h.
struct TridiagonalOperator {
  RadialGrid grid;
  std::vector<double> diagonal;      // 2/h^2 + V(r_i)
  std::vector<double> off_diagonal;  // -1/h^2, n-1 entries
};

// Samples the potential on the grid; throws std::domain_error if any sample
// is not finite.
TridiagonalOperator discretize(const std::function<double(double)>& potential,
                               const RadialGrid& grid);

std::vector<double> tridiagonal_apply(const TridiagonalOperator& op,
                                      const std::vector<double>& v);

// Number of eigenvalues strictly below x, from the signs of the LDL^T
// pivots with an underflow guard on tiny pivots.
int eigenvalue_count_below(const TridiagonalOperator& op, double x);

// The `count` smallest eigenvalues in (lo, hi), each located by bisection
// on the Sturm count to a bracket of width 1e-10.  Throws std::domain_error
// when the bracket contains fewer than `count` eigenvalues.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int count,
                                       double lo = -1.5, double hi = 0.0);

// Eigenvector by inverse iteration at the given shift (tridiagonal LU with
// partial pivoting).  Unit quadrature norm; sign fixed so the entry of
// largest magnitude is positive.
GridFunction eigenvector(const TridiagonalOperator& op, double shift);

struct SpectrumReport {
  RadialGrid grid_used;
  double tolerance = 0.0;
  std::vector<double> predicted;
  std::vector<double> computed;
  std::vector<double> abs_errors;
  std::vector<double> holes_expected;
  std::vector<double> hole_windows;
  std::vector<bool> holes_confirmed;
  bool levels_within_tol = false;
  bool passed = false;
};

// Builds the family potential, compares its lowest `levels` finite-
// difference eigenvalues with the predicted ladder, and confirms each
// spectral hole inside the compared range by a Sturm count of exactly zero
// eigenvalues in a window around it.  The window starts at 0.02 and shrinks
// to half the gap to the nearest predicted level, so a genuine neighbor can
// never fall inside it.  `inject_level_error` is added to the first
// computed level before comparison; it exists so failure paths can be
// exercised end to end.
SpectrumReport spectrum_check(const FamilySpec& spec, int levels, const RadialGrid& grid,
                              double tolerance, double inject_level_error = 0.0);

// Relative residual || T w - E w || / || w || over the interior rows (the
// end rows encode the Dirichlet truncation, not the operator), where w is
// the intertwined image of the base eigenfunction psi_{n,l} and T the
// discretized partner operator.  Orders 1 and 2 only.  An annihilated
// image (norm below 1e-12 of the input's) returns 0: the relation holds
// trivially and is not a failure.
double intertwining_residual(const FamilySpec& spec, int n_principal, const RadialGrid& grid);

// Quadratic-form image of the factorization identity:
// |<a psi, a psi> - (E - eps) <psi, psi>| relative to the right side.
// psi must be an eigenstate at E with dpsi its derivative samples.
double factorization_check(const SeedSolution& seed, const GridFunction& psi,
                           const GridFunction& dpsi, double energy);

// Second-order version: <B psi, B psi> against (E - eps_k)(E - eps_m) <psi, psi>.
double factorization_check(const SeedSolution& seed_k, const SeedSolution& seed_m,
                           const GridFunction& psi, const GridFunction& dpsi, double energy);

}  // namespace isospec

#endif
