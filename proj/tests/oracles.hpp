#pragma once

// Slow, independent reference implementations used only by tests.
// Everything here takes the textbook route -- ascending power series in
// long double, direct term-by-term summation -- and deliberately shares no
// code with the library, so agreement means two different derivations of
// the same quantity coincide, not that one implementation equals itself.

#include <cmath>
#include <cstdlib>

namespace oracle {

// J_k(x) for k >= 0 by the ascending power series in long double
// arithmetic.  term_0 = (x/2)^k / k! is accumulated as a running product
// (no factorial overflow), and the alternating tail is summed until it
// drops below 1e-24 relative.  Good to well under double precision for
// |x| <= 12, which covers every argument the tests use.
inline long double bessel_j(int k, long double x) {
  long double term = 1.0L;
  for (int j = 1; j <= k; ++j) term *= x / (2.0L * j);
  long double sum = term;
  const long double q = 0.25L * x * x;
  for (int m = 1; m <= 600; ++m) {
    term *= -q / (static_cast<long double>(m) * (m + k));
    sum += term;
    if (m > 4 && fabsl(term) <= 1e-24L * fabsl(sum)) break;
  }
  return sum;
}

// Signed order via the parity identity J_{-k} = (-1)^k J_k.
inline long double bessel_j_signed(int k, long double x) {
  const int a = std::abs(k);
  const long double v = bessel_j(a, x);
  return (k < 0 && (a & 1)) ? -v : v;
}

// d/dx J_k from the ladder J_k' = (J_{k-1} - J_{k+1}) / 2.
inline long double bessel_jp(int k, long double x) {
  return 0.5L * (bessel_j_signed(k - 1, x) - bessel_j_signed(k + 1, x));
}

// |k| cutoff of the direct sums below.  At |x| <= 10, J_200(x) is below
// 1e-180, so the omitted tail is immeasurably small.
constexpr int kOracleTerms = 200;

// S(xi, gamma, delta) = sum_k J_k^2 / (gamma^2 + 4 (k - delta)^2) by direct
// summation over k = -K..K, with every J_k from the power series.
inline long double lorentz_sum(long double xi, long double gamma,
                               long double delta) {
  long double s = 0.0L;
  for (int k = -kOracleTerms; k <= kOracleTerms; ++k) {
    const long double jk = bessel_j_signed(k, xi);
    const long double dk = 2.0L * (static_cast<long double>(k) - delta);
    s += jk * jk / (gamma * gamma + dk * dk);
  }
  return s;
}

// dS/dxi at delta = 0, same direct route through the derivative ladder.
inline long double lorentz_sum_dxi(long double xi, long double gamma) {
  long double s = 0.0L;
  for (int k = -kOracleTerms; k <= kOracleTerms; ++k) {
    const long double jk = bessel_j_signed(k, xi);
    const long double jpk = bessel_jp(k, xi);
    s += 2.0L * jk * jpk /
         (gamma * gamma + 4.0L * static_cast<long double>(k) * k);
  }
  return s;
}

// The singularity-free stationarity combination
//   F = J_0 J_1 - gamma^2 sum_{k>=1} J_k (J_{k-1} - J_{k+1})
//                                    / (gamma^2 + 4 k^2)
// rebuilt directly from power-series Bessel values.
inline long double stationarity_f(long double xi, long double gamma) {
  long double acc = bessel_j(0, xi) * bessel_j(1, xi);
  for (int k = 1; k <= kOracleTerms; ++k) {
    const long double jk = bessel_j(k, xi);
    const long double diff = bessel_j(k - 1, xi) - bessel_j(k + 1, xi);
    acc -= gamma * gamma * jk * diff /
           (gamma * gamma + 4.0L * static_cast<long double>(k) * k);
  }
  return acc;
}

// Relative error of a double result against a long double reference.
inline double rel_err(double got, long double want) {
  const long double denom = fmaxl(fabsl(want), 1e-300L);
  return static_cast<double>(fabsl((long double)got - want) / denom);
}

}  // namespace oracle
