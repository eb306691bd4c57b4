#ifndef ISOSPEC_FAMILIES_HPP
#define ISOSPEC_FAMILIES_HPP

// Parametric families of partner potentials built from seed solutions.
// One seed lowers the centrifugal index by one and prepends one level at
// the factorization energy; a pair lowers it by two and can leave a gap
// (spectral hole) between the prepended levels and the inherited ladder.

#include <functional>
#include <utility>
#include <vector>

#include "isospec/grid.hpp"
#include "isospec/hydrogen.hpp"
#include "isospec/seeds.hpp"

namespace isospec {

struct ChainStage {
  int k = 0;
  double lambda = 0.0;
};

struct FamilySpec {
  int l = 1;
  std::vector<ChainStage> chain;
  int order() const { return static_cast<int>(chain.size()); }
};

// Structural checks: l >= 1, 1 <= order <= l, every stage with
// -(l-1) <= k <= 0 and all k distinct.  lambda admissibility is checked by
// the potential constructors, whose rules depend on the order.
void validate_family(const FamilySpec& spec);

struct PartnerPotential {
  FamilySpec family;
  int l_out = 0;
  std::function<double(double)> evaluator;
  std::vector<double> predicted_levels;
};

struct MissingState {
  double energy = 0.0;
  GridFunction psi;              // unit quadrature norm
  double closed_form_constant = 0.0;
  double numeric_constant = 0.0; // 1 / (norm of the unnormalized sample)
};

struct PredictedLevel {
  double energy = 0.0;
  int principal = 0;  // energy = -1/principal^2
  bool inherited = false;
};

struct PredictedSpectrum {
  std::vector<PredictedLevel> levels;  // ascending
  std::vector<double> holes;           // -1/m^2 gaps inside the level range
};

// ---- first order ---------------------------------------------------------

// V_{l-1} - 2 (ln Phi)'' with the lambda-domain guard; l_out = l-1.
PartnerPotential first_order_potential(const SeedSolution& seed);

// Normalizable state at the factorization energy, psi ~ r^l e^{-r/(l+k)}/Phi,
// scaled to unit quadrature norm.  The closed-form constant is kept for
// comparison against the numeric normalization.
MissingState missing_state_1(const SeedSolution& seed, const RadialGrid& grid);

// First-order intertwiner a = d/dr + beta applied pointwise; dpsi must be
// the derivative samples of psi (analytic where available).
GridFunction apply_a(const SeedSolution& seed, const GridFunction& psi, const GridFunction& dpsi);

// Magnitude of the closed-form normalization of the first-order missing
// state, for the diagnostic ratio against numeric normalization.
double closed_form_normalization(const SeedSolution& seed);

// ---- second order --------------------------------------------------------

struct SecondOrderCoefficients {
  double d = 0.0;  // -eps_m - eps_k
  double c = 0.0;  // ((eps_m - eps_k)/2)^2
  std::function<Deriv1(double)> eta;
  std::function<double(double)> gamma;  // 2 gamma = eta^2 - eta' - d - 2 V_l
};

// Coefficients of B = d^2/dr^2 + eta d/dr + gamma.  eta is computed from
// the beta difference, with the Wronskian form (eps_m - eps_k) u_k u_m / W
// as fallback where the difference degenerates; eta' always comes from the
// Wronskian identities W' = (eps_k - eps_m) u_k u_m, eta' = -W''/W + (W'/W)^2.
SecondOrderCoefficients second_order_coefficients(const SeedSolution& seed_k,
                                                  const SeedSolution& seed_m);

// Admissible (lambda_n, lambda_s) region for a seed pair, stated in terms
// of n (index of the larger energy) and s (index of the smaller):
//   |n| even, |s| odd  -> both in (-inf, 1)
//   |n| odd,  |s| even -> both in (1, inf)
//   |n| even, |s| even -> lambda_n in (-inf, 1), lambda_s in (1, inf)
//   |n| odd,  |s| odd  -> lambda_n in (1, inf),  lambda_s in (-inf, 1)
struct PairedLambdaDomain {
  int n = 0;
  int s = 0;
  Interval lambda_n;
  Interval lambda_s;
  Interval for_index(int k) const;
};
PairedLambdaDomain paired_lambda_domain(int k, int m);

// V_{l-2} + 2 alpha' with alpha = eta + (1-2l)/r; l_out = l-2.  Validates
// the paired lambda domain.  Symmetric under seed exchange to roundoff.
PartnerPotential second_order_potential(const SeedSolution& seed_k, const SeedSolution& seed_m);

// Normalizable states of the two-parameter partner at the pair energies:
// the state at eps_k is proportional to u_m / W and vice versa, each
// renormalized to unit quadrature norm.  Closed-form constants are
// magnitudes (their energy-difference square roots can be imaginary).
struct MissingStatePair {
  MissingState at_eps_k;
  MissingState at_eps_m;
};
MissingStatePair missing_states_2(const SeedSolution& seed_k, const SeedSolution& seed_m,
                                  const RadialGrid& grid);

// Second-order intertwiner applied as the composition of two first-order
// steps (grid derivatives by central differences).
GridFunction apply_b(const SeedSolution& seed_k, const SeedSolution& seed_m,
                     const GridFunction& psi);

// Same operator in coefficient form D^2 + eta D + gamma, for cross-checks.
GridFunction apply_b_direct(const SeedSolution& seed_k, const SeedSolution& seed_m,
                            const GridFunction& psi);

// ---- chains of arbitrary order -------------------------------------------

using BetaField = std::function<Deriv1(double)>;

// One iteration step: the logarithmic-derivative field of the next stage,
//   beta_next = -beta_a - (eps_b - eps_a)/(beta_b - beta_a),
// where beta_a, beta_b solve the Riccati pair over the same base potential.
BetaField chain_beta(BetaField beta_a, BetaField beta_b, double eps_a, double eps_b);

// n-stage partner V_l + 2 (sum of stage beta fields)'; l_out = l - order.
// Orders 1 and 2 agree with the closed-form constructors; order >= 3 guards
// admissibility by a dense scan of every stage denominator.
PartnerPotential chain_potential(const FamilySpec& spec);

// Production dispatch: closed forms for orders 1 and 2 (regular even where
// intermediate stages are singular), chain recursion above.
PartnerPotential family_potential(const FamilySpec& spec);

// New levels at the factorization energies plus the inherited ladder
// -1/(l+K)^2, K = 1..k_max_inherited, sorted ascending, with hole flags for
// absent -1/m^2 values inside the spanned range.
PredictedSpectrum predicted_spectrum(const FamilySpec& spec, int k_max_inherited);

}  // namespace isospec

#endif
