#include "isospec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "isospec/hydrogen.hpp"

namespace isospec {

namespace {

constexpr double kBisectionWidth = 1e-10;
constexpr double kHoleWindow = 0.02;

double pivot_floor(const TridiagonalOperator& op) {
  double b2 = 0.0;
  for (double b : op.off_diagonal) b2 = std::max(b2, b * b);
  return std::numeric_limits<double>::min() * std::max(1.0, b2);
}

// LU with partial pivoting for (T - shift I); one in-place solve.
// Layout follows the usual general-tridiagonal factorization with a second
// superdiagonal created by row swaps.
void shifted_solve(const TridiagonalOperator& op, double shift, std::vector<double>& x) {
  const int n = op.grid.n_points;
  std::vector<double> dl(op.off_diagonal);
  std::vector<double> d(n);
  std::vector<double> du(op.off_diagonal);
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<char> swapped(n > 1 ? n - 1 : 0, 0);
  for (int i = 0; i < n; ++i) d[i] = op.diagonal[i] - shift;

  double anorm = 0.0;
  for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]));
  for (double b : op.off_diagonal) anorm = std::max(anorm, std::abs(b));
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(anorm, 1.0);

  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
      if (i + 2 < n) du2[i] = 0.0;
    } else {
      swapped[i] = 1;
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;

  for (int i = 0; i + 1 < n; ++i) {
    if (!swapped[i]) {
      x[i + 1] -= dl[i] * x[i];
    } else {
      const double temp = x[i];
      x[i] = x[i + 1];
      x[i + 1] = temp - dl[i] * x[i];
    }
  }
  x[n - 1] /= d[n - 1];
  if (n > 1) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (int i = n - 3; i >= 0; --i)
    x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
}

std::vector<SeedSolution> chain_seeds(const FamilySpec& spec) {
  std::vector<SeedSolution> out;
  for (const auto& st : spec.chain) out.push_back(make_seed_unchecked(spec.l, st.k, st.lambda));
  return out;
}

// B psi for an eigenstate via the coefficient form with psi'' taken from
// the eigen-equation psi'' = (V_l - E) psi.  Avoids grid differentiation
// entirely, so it stays accurate even when an intermediate first-order
// stage of the pair is singular.
GridFunction b_image_of_eigenstate(const SeedSolution& seed_k, const SeedSolution& seed_m,
                                   const GridFunction& psi, const GridFunction& dpsi,
                                   double energy) {
  if (!(psi.grid == dpsi.grid))
    throw std::invalid_argument("factorization: psi/dpsi grids differ");
  const SecondOrderCoefficients co = second_order_coefficients(seed_k, seed_m);
  const int n = psi.grid.n_points;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double r = psi.grid.point(i);
    const double d2 = (coulomb_potential(seed_k.l, r) - energy) * psi.values[i];
    out[i] = d2 + co.eta(r).value * dpsi.values[i] + co.gamma(r) * psi.values[i];
  }
  return GridFunction(psi.grid, std::move(out));
}

}  // namespace

TridiagonalOperator discretize(const std::function<double(double)>& potential,
                               const RadialGrid& grid) {
  TridiagonalOperator op;
  op.grid = grid;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  op.diagonal.resize(grid.n_points);
  op.off_diagonal.assign(grid.n_points - 1, -inv_h2);
  for (int i = 0; i < grid.n_points; ++i) {
    const double v = potential(grid.point(i));
    if (!std::isfinite(v))
      throw std::domain_error("discretize: potential not finite at r = " +
                              std::to_string(grid.point(i)));
    op.diagonal[i] = 2.0 * inv_h2 + v;
  }
  return op;
}

std::vector<double> tridiagonal_apply(const TridiagonalOperator& op,
                                      const std::vector<double>& v) {
  const int n = op.grid.n_points;
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("tridiagonal_apply: size mismatch");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double s = op.diagonal[i] * v[i];
    if (i > 0) s += op.off_diagonal[i - 1] * v[i - 1];
    if (i + 1 < n) s += op.off_diagonal[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

int eigenvalue_count_below(const TridiagonalOperator& op, double x) {
  const double pivmin = pivot_floor(op);
  int count = 0;
  double d = 1.0;
  for (int i = 0; i < op.grid.n_points; ++i) {
    const double b2 = (i > 0) ? op.off_diagonal[i - 1] * op.off_diagonal[i - 1] : 0.0;
    d = (op.diagonal[i] - x) - (i > 0 ? b2 / d : 0.0);
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int count, double lo,
                                       double hi) {
  if (count < 1) throw std::invalid_argument("lowest_eigenvalues: count must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("lowest_eigenvalues: empty bracket");
  const int below_lo = eigenvalue_count_below(op, lo);
  const int below_hi = eigenvalue_count_below(op, hi);
  if (below_hi - below_lo < count)
    throw std::domain_error("lowest_eigenvalues: bracket contains fewer than " +
                            std::to_string(count) + " eigenvalues (" +
                            std::to_string(below_hi - below_lo) + " found)");
  std::vector<double> out;
  for (int j = 0; j < count; ++j) {
    const int target = below_lo + j + 1;  // want smallest x with count(x) >= target
    double a = lo;
    double b = hi;
    while (b - a > kBisectionWidth) {
      const double mid = 0.5 * (a + b);
      if (eigenvalue_count_below(op, mid) >= target)
        b = mid;
      else
        a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

GridFunction eigenvector(const TridiagonalOperator& op, double shift) {
  const int n = op.grid.n_points;
  std::vector<double> x(n, 1.0);
  for (int iter = 0; iter < 3; ++iter) {
    shifted_solve(op, shift, x);
    double mx = 0.0;
    for (double v : x) mx = std::max(mx, std::abs(v));
    if (!(mx > 0.0) || !std::isfinite(mx))
      throw std::runtime_error("eigenvector: inverse iteration degenerated");
    for (auto& v : x) v /= mx;
  }
  int arg = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(x[i]) > std::abs(x[arg])) arg = i;
  const double sign = x[arg] < 0.0 ? -1.0 : 1.0;
  GridFunction f(op.grid, std::move(x));
  const double norm = l2_norm(f);
  for (auto& v : f.values) v *= sign / norm;
  return f;
}

SpectrumReport spectrum_check(const FamilySpec& spec, int levels, const RadialGrid& grid,
                              double tolerance, double inject_level_error) {
  if (levels < 1) throw std::invalid_argument("spectrum_check: levels must be >= 1");
  const PartnerPotential pot = family_potential(spec);
  const PredictedSpectrum ps = predicted_spectrum(spec, levels + 2);

  SpectrumReport rep;
  rep.grid_used = grid;
  rep.tolerance = tolerance;
  for (int i = 0; i < levels; ++i) rep.predicted.push_back(ps.levels[i].energy);

  const TridiagonalOperator op = discretize(pot.evaluator, grid);
  rep.computed = lowest_eigenvalues(op, levels);
  if (inject_level_error != 0.0) rep.computed[0] += inject_level_error;

  rep.levels_within_tol = true;
  for (int i = 0; i < levels; ++i) {
    rep.abs_errors.push_back(std::abs(rep.computed[i] - rep.predicted[i]));
    if (!(rep.abs_errors[i] <= tolerance)) rep.levels_within_tol = false;
  }

  bool holes_ok = true;
  for (double h : ps.holes) {
    if (!(h < rep.predicted.back())) continue;  // beyond the compared range
    double w = kHoleWindow;
    for (const auto& lv : ps.levels) w = std::min(w, 0.5 * std::abs(h - lv.energy));
    const int inside = eigenvalue_count_below(op, h + w) - eigenvalue_count_below(op, h - w);
    rep.holes_expected.push_back(h);
    rep.hole_windows.push_back(w);
    rep.holes_confirmed.push_back(inside == 0);
    if (inside != 0) holes_ok = false;
  }
  rep.passed = rep.levels_within_tol && holes_ok;
  return rep;
}

double intertwining_residual(const FamilySpec& spec, int n_principal, const RadialGrid& grid) {
  validate_family(spec);
  const int order = spec.order();
  if (order > 2)
    throw std::domain_error("intertwining_residual: implemented for orders 1 and 2 only");

  const PartnerPotential pot = family_potential(spec);
  const std::vector<SeedSolution> seeds = chain_seeds(spec);
  const EigenfunctionPair ef = radial_eigenfunction_with_derivative(n_principal, spec.l, grid);
  const double energy = -1.0 / (static_cast<double>(n_principal) * n_principal);
  const GridFunction w =
      (order == 1) ? apply_a(seeds[0], ef.psi, ef.dpsi)
                   : b_image_of_eigenstate(seeds[0], seeds[1], ef.psi, ef.dpsi, energy);
  if (l2_norm(w) < 1e-12 * l2_norm(ef.psi)) return 0.0;  // annihilated image

  const TridiagonalOperator op = discretize(pot.evaluator, grid);
  const std::vector<double> tw = tridiagonal_apply(op, w.values);
  // Interior rows only: the first and last rows encode the Dirichlet
  // truncation of the domain, not the differential operator.
  double sum = 0.0;
  for (int i = 1; i + 1 < grid.n_points; ++i) {
    const double res = tw[i] - energy * w.values[i];
    sum += res * res;
  }
  return std::sqrt(sum * grid.h) / l2_norm(w);
}

double factorization_check(const SeedSolution& seed, const GridFunction& psi,
                           const GridFunction& dpsi, double energy) {
  const GridFunction aw = apply_a(seed, psi, dpsi);
  const double lhs = inner_product(aw, aw);
  const double rhs = (energy - seed.epsilon) * inner_product(psi, psi);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double factorization_check(const SeedSolution& seed_k, const SeedSolution& seed_m,
                           const GridFunction& psi, const GridFunction& dpsi, double energy) {
  if (seed_k.l != seed_m.l) throw std::invalid_argument("factorization_check: base l differs");
  const GridFunction bw = b_image_of_eigenstate(seed_k, seed_m, psi, dpsi, energy);
  const double lhs = inner_product(bw, bw);
  const double rhs =
      (energy - seed_k.epsilon) * (energy - seed_m.epsilon) * inner_product(psi, psi);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace isospec
