#include "isospec/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace isospec {

namespace {

constexpr double kRelTol = 1e-14;
constexpr int kMaxTerms = 10000;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Terminating sum: a = -p with p >= 0.  Exactly p+1 terms; the term at
// n = p+1 carries (a)_{p+1} = 0 so the remainder is identically zero.
SeriesResult kummer_terminating(double a, double b, double z) {
  const int p = static_cast<int>(-a);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n <= p; ++n) {
    term *= (a + n - 1) / (b + n - 1) * z / n;
    sum += term;
  }
  SeriesResult res;
  res.value = sum;
  res.terms_used = p + 1;
  res.converged = true;
  return res;
}

SeriesResult kummer_direct(double a, double b, double z) {
  double term = 1.0;
  double sum = 1.0;
  SeriesResult res;
  for (int n = 1; n <= kMaxTerms; ++n) {
    term *= (a + n - 1) / (b + n - 1) * z / n;
    sum += term;
    if (std::abs(term) <= kRelTol * std::abs(sum)) {
      res.value = sum;
      res.terms_used = n + 1;
      res.converged = true;
      return res;
    }
  }
  res.value = sum;
  res.terms_used = kMaxTerms + 1;
  res.converged = false;
  return res;
}

// Direct series with on-the-fly rescaling, for the transformed path at
// large |z| where the partial sum alone would overflow even though
// e^z * sum is moderate.  Returns exp(z) * sum.
SeriesResult kummer_direct_scaled(double a, double b, double z, double expshift) {
  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  SeriesResult res;
  for (int n = 1; n <= kMaxTerms; ++n) {
    term *= (a + n - 1) / (b + n - 1) * z / n;
    sum += term;
    if (std::abs(sum) > 1e250) {
      sum *= 1e-250;
      term *= 1e-250;
      log_scale += 250.0 * std::log(10.0);
    }
    if (std::abs(term) <= kRelTol * std::abs(sum)) {
      res.value = (sum > 0.0)
                      ? std::exp(expshift + log_scale + std::log(sum))
                      : -std::exp(expshift + log_scale + std::log(-sum));
      res.terms_used = n + 1;
      res.converged = true;
      return res;
    }
  }
  res.value = (sum > 0.0) ? std::exp(expshift + log_scale + std::log(sum))
                          : -std::exp(expshift + log_scale + std::log(-sum));
  res.terms_used = kMaxTerms + 1;
  res.converged = false;
  return res;
}

}  // namespace

double pochhammer(double a, int n) {
  if (n < 0) throw std::domain_error("pochhammer: n must be >= 0");
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= a + i;
  return p;
}

double factorial(int n) {
  if (n < 0 || n > 170) throw std::domain_error("factorial: n out of range");
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

SeriesResult kummer_m(double a, double b, double z) {
  const bool a_terminates = is_nonpositive_integer(a);
  if (is_nonpositive_integer(b)) {
    // (b)_n vanishes at n = |b|+1; only a terminating numerator with
    // |a| < |b| stops the sum before that.
    if (!a_terminates || -a >= -b) {
      throw std::domain_error(
          "kummer_m: b = " + std::to_string(b) +
          " is a nonpositive integer; requires terminating a with |a| < |b|");
    }
  }
  if (a_terminates) return kummer_terminating(a, b, z);
  if (z < 0.0) {
    // Kummer transform.  b-a may itself be a nonpositive integer, in which
    // case the transformed series terminates and is exact.
    const double at = b - a;
    if (is_nonpositive_integer(at)) {
      SeriesResult res = kummer_terminating(at, b, -z);
      res.value *= std::exp(z);
      return res;
    }
    if (-z > 600.0) return kummer_direct_scaled(at, b, -z, z);
    SeriesResult res = kummer_direct(at, b, -z);
    res.value *= std::exp(z);
    return res;
  }
  return kummer_direct(a, b, z);
}

KummerDerivatives kummer_m_derivatives(double a, double b, double z) {
  KummerDerivatives out{};
  out.value = kummer_m(a, b, z).value;
  if (a == 0.0) {
    // M(0,b,z) = 1 identically; shifting parameters would step outside the
    // terminating regime, so do not evaluate.
    out.dz = 0.0;
    out.dz2 = 0.0;
    return out;
  }
  const double c1 = a / b;
  out.dz = c1 * kummer_m(a + 1, b + 1, z).value;
  if (a + 1 == 0.0) {
    out.dz2 = 0.0;
    return out;
  }
  const double c2 = c1 * (a + 1) / (b + 1);
  out.dz2 = c2 * kummer_m(a + 2, b + 2, z).value;
  return out;
}

double lower_incomplete_gamma(int s, double x) {
  if (s < 1) throw std::domain_error("lower_incomplete_gamma: s must be a positive integer");
  if (x < 0.0) throw std::domain_error("lower_incomplete_gamma: x must be >= 0");
  double term = 1.0;  // x^j / j!
  double sum = 1.0;
  for (int j = 1; j < s; ++j) {
    term *= x / j;
    sum += term;
  }
  return factorial(s - 1) * (1.0 - std::exp(-x) * sum);
}

}  // namespace isospec
