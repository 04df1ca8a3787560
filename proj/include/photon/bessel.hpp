#pragma once

#include <cstddef>
#include <vector>

namespace photon {

// One row of Bessel functions of the first kind, J_k(xi) for k = -K..K.
// Only k >= 0 is stored; negative orders follow from the parity identity
// J_{-k} = (-1)^k J_k, which therefore holds exactly by construction.
struct BesselRow {
  double xi = 0.0;
  int order = 0;               // truncation order K
  std::vector<double> values;  // values[k] = J_k(xi) for k = 0..K

  // Signed-order access.  |k| > order returns 0: that is the truncated tail,
  // which the order was chosen to make negligible.
  double operator[](int k) const {
    const int a = k < 0 ? -k : k;
    if (a > order) return 0.0;
    const double v = values[static_cast<std::size_t>(a)];
    return (k < 0 && (a & 1)) ? -v : v;
  }
};

// An order K >= 12 such that the omitted tail satisfies
// sum_{|k|>K} J_k(xi)^2 < tol (bounded via the normalization identity
// sum_k J_k^2 = 1), with a small safety margin so the bound survives
// re-evaluating the sum on a row truncated exactly at K.  The floor of 12
// keeps short rows cheap to reason about.
int truncation_order(double xi, double tol);

// J_0..J_K by backward (Miller) recurrence, normalized with the identity
// J_0 + 2 sum_{m>=1} J_{2m} = 1; small arguments fall back to the power
// series.  Requires K >= 1.
BesselRow bessel_row(double xi, int order);

// n-th positive zero of J_0 resp. J_1 (n = 1, 2, ...), located by bisection
// on bessel_row itself so every module shares one Bessel implementation.
double bessel_j0_zero(int n);
double bessel_j1_zero(int n);

// S(xi, gamma, delta) = sum_{k=-inf}^{inf} J_k(xi)^2 / (gamma^2 + 4(k-delta)^2),
// the Bessel/Lorentzian sum at the heart of every closed-form rate.
// Throws DivergentTerm if gamma = 0 and delta is an integer whose J_delta(xi)
// does not vanish (that term is 1/0); a vanishing J_delta contributes 0.
double lorentz_sum(double xi, double gamma, double delta);

// dS/dxi at delta = 0, via J_k' = (J_{k-1} - J_{k+1})/2.  Sign changes over
// xi bracket the extrema of the closed-form mean waiting time.
double lorentz_sum_dxi(double xi, double gamma);

// S and its higher partials at delta = 0, everything the fold (saddle-node)
// Newton solve needs.  Derivatives are analytic, built from the recurrence
// ladders J_k'' = (J_{k-2} - 2J_k + J_{k+2})/4 and
// J_k''' = (J_{k-3} - 3J_{k-1} + 3J_{k+1} - J_{k+3})/8 -- no finite
// differences, so the Newton iteration stays quadratic near degenerate roots.
struct LorentzPartials {
  double s = 0.0;
  double s_x = 0.0;    // dS/dxi
  double s_xx = 0.0;   // d2S/dxi2
  double s_xxx = 0.0;  // d3S/dxi3
  double s_xg = 0.0;   // d2S/(dxi dgamma)
  double s_xxg = 0.0;  // d3S/(dxi2 dgamma)
};
LorentzPartials lorentz_partials(double xi, double gamma);

}  // namespace photon
