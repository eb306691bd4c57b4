#ifndef ISOSPEC_SEEDS_HPP
#define ISOSPEC_SEEDS_HPP

// Seed solutions u of the radial Coulomb equation at the factorization
// energies eps = -1/(l+k)^2, k = 0, -1, ..., -(l-1).  Each seed is
// u = r^-l e^{r/(l+k)} Phi(r) with Phi a one-parameter (lambda) combination
// of confluent hypergeometric terms; the one-parameter freedom is what makes
// the partner families parametric.

#include "isospec/grid.hpp"
#include "isospec/specfun.hpp"

namespace isospec {

// Value with first (and second) radial derivative, for analytic propagation
// through log-derivatives and chain rules; no finite differences.
struct Deriv1 {
  double value;
  double deriv;
};
struct Deriv2 {
  double value;
  double deriv;
  double deriv2;
};

// Open interval (lo, hi).
struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return x > lo && x < hi; }
};

struct SeedSolution {
  int l = 1;          // base centrifugal index, >= 1
  int k = 0;          // factorization offset, -(l-1) <= k <= 0
  double lambda = 0;  // family parameter
  double epsilon = 0; // factorization energy -1/(l+k)^2
  double nu = 0;      // coefficient of the second hypergeometric term
};

// Factorization energy -1/(l+k)^2; evaluates identically to
// energy_level(l, K) at l+k == l+K.
double factorization_energy(int l, int k);

// Admissible lambda range keeping Phi nodeless on (0, inf):
// (-inf, 1) for even |k|, (1, inf) for odd |k|.
Interval lambda_domain(int k);

// Validating constructor: checks index ranges and that lambda lies in
// lambda_domain(k).  Throws std::domain_error stating the violated
// inequality.
SeedSolution make_seed(int l, int k, double lambda);

// Skips the lambda-domain check (index ranges still enforced).  Needed for
// deliberately singular seeds in negative tests and for two-parameter
// families, whose admissible region is a property of the pair rather than
// of each seed alone.
SeedSolution make_seed_unchecked(int l, int k, double lambda);

// Phi and its first two radial derivatives.  Phi(0) = 1.
Deriv2 phi(const SeedSolution& seed, double r);

// Independent closed/integral forms of Phi for cross-checking:
//   k =  0: via the lower incomplete gamma function;
//   k = -1: via adaptive quadrature of an integrand with a double pole at
//           r = l(l-1) (finite-part subtraction), rejected within 0.1 of
//           that removable point.
double phi_integral_form(int l, int k, double lambda, double r);

// Seed u = r^-l e^{r/(l+k)} Phi with two analytic derivatives; r > 0.
Deriv2 seed_u(const SeedSolution& seed, double r);

// Logarithmic-derivative field beta = -u'/u = l/r - 1/(l+k) - Phi'/Phi and
// its radial derivative.  Satisfies -beta' + beta^2 = V_l - eps.
Deriv1 beta(const SeedSolution& seed, double r);

// Dense sign scan of Phi on (0, r_max]: log-spaced samples below r = 1
// plus linear samples up to r_max.
struct PositivityScan {
  bool all_positive = true;
  double sign_change_r = 0.0;  // meaningful only when !all_positive
};
PositivityScan phi_positivity_scan(const SeedSolution& seed, double r_max, int n_samples);

}  // namespace isospec

#endif
