#include "isospec/seeds.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace isospec {

namespace {

std::string num_text(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_indices(int l, int k) {
  if (l < 1) throw std::domain_error("seed: l must be >= 1, got " + std::to_string(l));
  if (k > 0 || k < -(l - 1))
    throw std::domain_error("seed: k must satisfy -(l-1) <= k <= 0, got k = " +
                            std::to_string(k) + " for l = " + std::to_string(l));
}

// ---- adaptive Simpson for the k = -1 integral form ----------------------

double simpson(const std::function<double(double)>& f, double a, double m, double b,
               double fa, double fm, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, m, b, fa, fm, fb, whole, tol, 20);
}

// Derivatives of f(x) = x^p e^{-cx} at a point, via the polynomial
// recurrence q_{j+1} = q_j' - c q_j, f^(j) = q_j(x) e^{-cx}.
std::vector<double> poly_exp_derivatives(int p, double c, double x, int orders) {
  std::vector<double> q(p + 1, 0.0);
  q[p] = 1.0;
  const double damp = std::exp(-c * x);
  std::vector<double> out;
  out.reserve(orders + 1);
  for (int j = 0; j <= orders; ++j) {
    double val = 0.0;
    for (int d = p; d >= 0; --d) val = val * x + q[d];
    out.push_back(val * damp);
    std::vector<double> qn(p + 1, 0.0);
    for (int d = 1; d <= p; ++d) qn[d - 1] += d * q[d];
    for (int d = 0; d <= p; ++d) qn[d] -= c * q[d];
    q = std::move(qn);
  }
  return out;
}

}  // namespace

double factorization_energy(int l, int k) {
  check_indices(l, k);
  const double n = l + k;
  return -1.0 / (n * n);
}

Interval lambda_domain(int k) {
  return (std::abs(k) % 2 == 0) ? Interval{-kInf, 1.0} : Interval{1.0, kInf};
}

SeedSolution make_seed_unchecked(int l, int k, double lambda) {
  check_indices(l, k);
  SeedSolution s;
  s.l = l;
  s.k = k;
  s.lambda = lambda;
  s.epsilon = factorization_energy(l, k);
  // nu = |k|! / (2l+1)! * lambda / (-2l)_{|k|}
  s.nu = factorial(-k) / factorial(2 * l + 1) * lambda / pochhammer(-2.0 * l, -k);
  return s;
}

SeedSolution make_seed(int l, int k, double lambda) {
  const Interval dom = lambda_domain(k);
  if (!dom.contains(lambda)) {
    const bool odd = std::abs(k) % 2 == 1;
    throw std::domain_error("seed: lambda " + num_text(lambda) +
                            (odd ? " not in (1, inf): required when |k| is odd"
                                 : " not in (-inf, 1): required when |k| is even"));
  }
  return make_seed_unchecked(l, k, lambda);
}

Deriv2 phi(const SeedSolution& seed, double r) {
  if (r < 0.0) throw std::domain_error("phi: r must be >= 0");
  const int l = seed.l;
  const int nk = l + seed.k;
  const double c = 2.0 / nk;
  const double z = -c * r;

  // Terminating part M(k, -2l, z); |k| <= l-1 < 2l keeps every parameter
  // shift inside the terminating regime.
  const KummerDerivatives m1 = kummer_m_derivatives(seed.k, -2.0 * l, z);

  // Second part nu (cr)^{2l+1} M(1+k+2l, 2+2l, z); positive parameters,
  // transform path for z < 0.
  const double a2 = 1.0 + seed.k + 2.0 * l;
  const double b2 = 2.0 + 2.0 * l;
  const KummerDerivatives m2 = kummer_m_derivatives(a2, b2, z);

  const int p = 2 * l + 1;
  const double cr = c * r;
  const double P = std::pow(cr, p);
  const double Pd = p * c * std::pow(cr, p - 1);
  const double Pdd = static_cast<double>(p) * (p - 1) * c * c * std::pow(cr, p - 2);

  Deriv2 out;
  out.value = m1.value - seed.nu * P * m2.value;
  out.deriv = -c * m1.dz - seed.nu * (Pd * m2.value - c * P * m2.dz);
  out.deriv2 = c * c * m1.dz2 -
               seed.nu * (Pdd * m2.value - 2.0 * c * Pd * m2.dz + c * c * P * m2.dz2);
  return out;
}

double phi_integral_form(int l, int k, double lambda, double r) {
  if (r < 0.0) throw std::domain_error("phi_integral_form: r must be >= 0");
  if (k == 0) {
    check_indices(l, k);
    // 1 - lambda (2/l)^{2l+1}/(2l)! Int_0^r x^{2l} e^{-2x/l} dx, where the
    // integral is (l/2)^{2l+1} gamma(2l+1, 2r/l).
    return 1.0 - lambda * lower_incomplete_gamma(2 * l + 1, 2.0 * r / l) / factorial(2 * l);
  }
  if (k != -1)
    throw std::domain_error("phi_integral_form: only k = 0 and k = -1 have integral forms");
  check_indices(l, k);
  if (l < 2) throw std::domain_error("phi_integral_form: k = -1 requires l >= 2");

  const double A = static_cast<double>(l) * (l - 1);
  if (std::abs(r - A) < 0.1)
    throw std::out_of_range("phi_integral_form: r within 0.1 of the removable point r = " +
                            num_text(A));

  const double c = 2.0 / (l - 1);
  const int p = 2 * l;
  // Subtract the double pole at x = A: with f(x) = x^{2l} e^{-cx},
  //   Int_0^r f/(x-A)^2 = f(A) (-1/(r-A) - 1/A)
  //                     + f'(A) (ln|r-A| - ln A)
  //                     + Int_0^r h,   h = (f - f(A) - f'(A)(x-A))/(x-A)^2,
  // which also gives the finite-part value when r > A.
  // The subtracted quotient loses ~eps*f(A)/t^2 to cancellation, so a Taylor
  // stub must cover the whole noisy band, not just the removable point.
  const std::vector<double> fd = poly_exp_derivatives(p, c, A, 8);
  const auto h = [&](double x) -> double {
    const double t = x - A;
    if (std::abs(t) < 0.05 * std::max(1.0, A)) {
      double acc = fd[8] / 40320.0;
      for (int j = 7; j >= 2; --j) acc = acc * t + fd[j] / factorial(j);
      return acc;
    }
    return (poly_exp_derivatives(p, c, x, 0)[0] - fd[0] - fd[1] * t) / (t * t);
  };
  const double integral = fd[0] * (-1.0 / (r - A) - 1.0 / A) +
                          fd[1] * (std::log(std::abs(r - A)) - std::log(A)) +
                          integrate(h, 0.0, r, 1e-11);

  const double prefactor = 1.0 - r / A;
  const double coeff = lambda / factorial(2 * l - 1) * std::pow(2.0 / (l - 1), 2 * l - 1);
  return prefactor * (1.0 + coeff * integral);
}

Deriv2 seed_u(const SeedSolution& seed, double r) {
  if (!(r > 0.0)) throw std::domain_error("seed_u: r must be > 0");
  const int l = seed.l;
  const double inv_nk = 1.0 / (l + seed.k);
  const Deriv2 ph = phi(seed, r);
  const double f = std::pow(r, -l) * std::exp(r * inv_nk);
  const double g = -l / r + inv_nk;  // f'/f
  Deriv2 out;
  out.value = f * ph.value;
  out.deriv = f * (g * ph.value + ph.deriv);
  out.deriv2 = f * ((g * g + l / (r * r)) * ph.value + 2.0 * g * ph.deriv + ph.deriv2);
  return out;
}

Deriv1 beta(const SeedSolution& seed, double r) {
  if (!(r > 0.0)) throw std::domain_error("beta: r must be > 0");
  const int l = seed.l;
  const Deriv2 ph = phi(seed, r);
  if (ph.value == 0.0)
    throw std::domain_error("beta: Phi vanishes at r = " + num_text(r) +
                            "; lambda outside the nodeless domain");
  const double logd = ph.deriv / ph.value;
  Deriv1 out;
  out.value = l / r - 1.0 / (l + seed.k) - logd;
  out.deriv = -l / (r * r) - (ph.deriv2 / ph.value - logd * logd);
  return out;
}

PositivityScan phi_positivity_scan(const SeedSolution& seed, double r_max, int n_samples) {
  if (!(r_max > 0.0) || n_samples < 2)
    throw std::domain_error("phi_positivity_scan: need r_max > 0 and n_samples >= 2");
  PositivityScan scan;
  double prev = 1.0;  // Phi(0) = 1
  const double r_lo = std::min(1e-4, r_max / n_samples);
  const double log_hi = std::min(1.0, r_max);
  // log-spaced below 1, linear above: zeros cluster at moderate r but the
  // small-r behavior matters for seeds with steep centrifugal prefactors.
  std::vector<double> rs;
  rs.reserve(2 * n_samples);
  for (int i = 0; i < n_samples; ++i)
    rs.push_back(r_lo * std::pow(log_hi / r_lo, static_cast<double>(i) / (n_samples - 1)));
  if (r_max > 1.0)
    for (int i = 1; i <= n_samples; ++i)
      rs.push_back(1.0 + (r_max - 1.0) * static_cast<double>(i) / n_samples);
  for (double r : rs) {
    const double v = phi(seed, r).value;
    if ((prev > 0.0 && v < 0.0) || (prev < 0.0 && v > 0.0) || v == 0.0) {
      scan.all_positive = false;
      scan.sign_change_r = r;
      return scan;
    }
    prev = v;
  }
  return scan;
}

}  // namespace isospec
