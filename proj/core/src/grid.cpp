#include "isospec/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace isospec {

RadialGrid::RadialGrid(double rmin, double rmax, int n) : r_min(rmin), r_max(rmax), n_points(n) {
  if (!(rmin > 0.0)) throw std::domain_error("RadialGrid: r_min must be > 0");
  if (!(rmax > rmin)) throw std::domain_error("RadialGrid: r_max must exceed r_min");
  if (n < 2) throw std::domain_error("RadialGrid: n_points must be >= 2");
  h = (rmax - rmin) / (n - 1);
}

RadialGrid grid_with_spacing(double h, double r_max) {
  if (!(h > 0.0) || !(r_max > h)) throw std::domain_error("grid_with_spacing: need 0 < h < r_max");
  const int n = static_cast<int>(std::lround((r_max - h) / h)) + 1;
  return RadialGrid(h, h + h * (n - 1), n);
}

GridFunction::GridFunction(const RadialGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.n_points)
    throw std::invalid_argument("GridFunction: value count does not match grid");
}

double trapezoid(const GridFunction& f) {
  const auto& v = f.values;
  double sum = 0.0;
  for (double x : v) sum += x;
  sum -= 0.5 * (v.front() + v.back());
  return sum * f.grid.h;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("inner_product: grids differ");
  const auto& a = f.values;
  const auto& b = g.values;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  sum -= 0.5 * (a.front() * b.front() + a.back() * b.back());
  return sum * f.grid.h;
}

double l2_norm(const GridFunction& f) { return std::sqrt(inner_product(f, f)); }

GridFunction central_difference(const GridFunction& f) {
  const auto& v = f.values;
  const int n = f.grid.n_points;
  if (n < 3) throw std::invalid_argument("central_difference: need at least 3 points");
  const double h = f.grid.h;
  std::vector<double> d(n);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (int i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return GridFunction(f.grid, std::move(d));
}

int count_sign_changes(const std::vector<double>& v, double rel_threshold) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double floor = rel_threshold * vmax;
  int count = 0;
  int last_sign = 0;
  for (double x : v) {
    if (std::abs(x) <= floor) continue;
    const int s = (x > 0.0) ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++count;
    last_sign = s;
  }
  return count;
}

}  // namespace isospec
