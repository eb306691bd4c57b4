#ifndef ISOSPEC_SPECFUN_HPP
#define ISOSPEC_SPECFUN_HPP

// Confluent hypergeometric building blocks for the seed solutions.
//
// The regime needed here is the awkward one for general-purpose libraries:
// M(a,b,z) with b a negative integer, which is well defined only when a is
// a negative integer of smaller magnitude so the series terminates before
// the denominator vanishes.

#include <cstdint>

namespace isospec {

struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;    // number of series terms actually summed, >= 1
  bool converged = false;
};

// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
double pochhammer(double a, int n);

// Kummer's confluent hypergeometric M(a,b,z) = sum_n (a)_n/(b)_n z^n/n!.
//
// Paths:
//  - a a nonpositive integer: exact terminating sum of |a|+1 terms.
//  - b a nonpositive integer and a not terminating with |a| < |b|: domain error.
//  - z < 0, non-terminating: Kummer transform M(a,b,z) = e^z M(b-a,b,-z),
//    so the summed series has no sign alternation.
//  - otherwise: direct series, relative tolerance 1e-14, capped at 10000
//    terms (converged=false when the cap is hit).
SeriesResult kummer_m(double a, double b, double z);

// M(a,b,z) together with its first and second z-derivatives, each obtained
// from the contiguous relation dM/dz = (a/b) M(a+1,b+1,z).  Never uses
// finite differences; zero-coefficient cases short-circuit so parameter
// shifts never leave the valid (terminating) regime.
struct KummerDerivatives {
  double value;
  double dz;
  double dz2;
};
KummerDerivatives kummer_m_derivatives(double a, double b, double z);

// Lower incomplete gamma gamma(s,x) for positive integer s and x >= 0,
// via the finite closed form gamma(s,x) = (s-1)! (1 - e^-x sum_{j<s} x^j/j!).
double lower_incomplete_gamma(int s, double x);

double factorial(int n);

}  // namespace isospec

#endif
