#ifndef ISOSPEC_GRID_HPP
#define ISOSPEC_GRID_HPP

#include <cstddef>
#include <vector>

namespace isospec {

// Uniform radial grid on [r_min, r_max], r_min > 0 so the centrifugal
// term is never evaluated at the origin.
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  int n_points = 0;
  double h = 0.0;

  RadialGrid() = default;
  RadialGrid(double rmin, double rmax, int n);

  double point(int i) const { return r_min + h * i; }
  bool operator==(const RadialGrid&) const = default;
};

// Grid spaced exactly by `h` starting at r_min = h, so the implicit
// Dirichlet ghost point sits at r = 0 where radial solutions vanish.
RadialGrid grid_with_spacing(double h, double r_max);

struct GridFunction {
  RadialGrid grid;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(const RadialGrid& g, std::vector<double> v);
};

// Trapezoid quadrature of f over its grid.
double trapezoid(const GridFunction& f);

// Trapezoid quadrature of f*g (shared grid required).
double inner_product(const GridFunction& f, const GridFunction& g);

double l2_norm(const GridFunction& f);

// Second-order derivative estimate: central differences inside, one-sided
// three-point stencils at the ends.
GridFunction central_difference(const GridFunction& f);

// Count strict sign changes, skipping entries below rel_threshold * max|v|.
int count_sign_changes(const std::vector<double>& v, double rel_threshold = 1e-9);

}  // namespace isospec

#endif
