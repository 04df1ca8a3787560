#pragma once

#include <span>
#include <vector>

namespace photon {

// Extremum of the closed-form mean waiting time <tau>(xi) at fixed gamma.
enum class ExtremumKind { Maximum, Minimum };

struct ExtremumRecord {
  double xi_star = 0.0;
  ExtremumKind kind = ExtremumKind::Maximum;
  double gamma = 0.0;
  // Index of the associated Bessel zero: maxima sit near the n-th zero of
  // J_0, minima near the n-th positive zero of J_1.  The parity-pinned
  // minimum at xi = 0 carries n = 0.
  int n = 0;
};

// Singularity-free stationarity condition
//   F(xi, gamma) = J_0 J_1 - gamma^2 sum_{k>=1} J_k (J_{k-1} - J_{k+1})
//                                              / (gamma^2 + 4k^2),
// algebraically equivalent to the J_0 = G form wherever J_1 != 0 and
// proportional to -dS/dxi; its zeros are exactly the extrema of <tau>(xi).
double stationarity_residual(double xi, double gamma);

// G(gamma, xi), the right-hand side of the J_0 = G form of the extremum
// condition.  Diverges at zeros of J_1 -- kept only for visualization data;
// all root finding uses stationarity_residual.
double g_form(double xi, double gamma);

// All extrema in [xi_lo, xi_hi]: sign changes of F on a 0.01 scan grid,
// refined by bisection, classified by the slope of F (F falling through
// zero is a maximum of <tau>).  Roots closer than the scan step to each
// other (pairs about to annihilate) are out of scope here -- the critical
// point continuation handles those.
std::vector<ExtremumRecord> find_extrema(double gamma, double xi_lo,
                                         double xi_hi);

// Small-gamma shift of the n-th maximum away from the n-th J_0 zero xi_n:
//   xi - xi_n ~ (gamma^2 / J_1^2(xi_n))
//               sum_{k>=1} J_k(xi_n)(J_{k+1}(xi_n) - J_{k-1}(xi_n))
//                          / (gamma^2 + 4k^2).
// Positive: maxima shift right.  Leading order only (warn above gamma=0.5).
double small_gamma_shift(int n, double gamma);

// Fold point where the n-th max-min pair of <tau>(xi) annihilates.
struct CriticalPoint {
  double xi_cr = 0.0;
  double gamma_cr = 0.0;
  int n = 0;
};

struct CriticalPointDetail {
  CriticalPoint point;
  // Annihilation gammas seen by bisecting each branch's existence
  // separately; the fold structure demands they coincide.
  double gamma_merge_max = 0.0;
  double gamma_merge_min = 0.0;
  // |dS/dxi| and |d2S/dxi2| at the returned point (fold conditions).
  double resid_s1 = 0.0;
  double resid_s2 = 0.0;
};

// Continuation in gamma from gamma = 1.0: bisect the pair's existence to
// bracket the merge, then polish with a 2D Newton solve of
// {dS/dxi = 0, d2S/dxi2 = 0} using analytic partials.  Throws NoPairFound
// if the pair is already absent at the starting gamma.
CriticalPoint find_critical_point(int n);
CriticalPointDetail find_critical_point_detail(int n);

struct ExponentFit {
  double beta = 0.0;
  double ci_half_width = 0.0;  // two standard errors of the fitted slope
  double window_lo = 0.0;      // gamma range used
  double window_hi = 0.0;
  double residual_rms = 0.0;   // log-log fit residual
  int n_points = 0;
};

// Approach exponent of the fold: evaluate the maximum branch on the ladder
// gamma_j = gamma_cr (1 - w 2^{-j}), j = 1..8, w = 0.1, and fit
// log(xi_cr - xi_max) against log(gamma_cr - gamma).  Throws
// FitWindowTooNarrow if fewer than 5 ladder points still carry a maximum.
ExponentFit critical_exponent_fit(int n);

// Shared log-log power-law fit pipeline (y = c x^beta), exposed so the fit
// itself can be validated on synthetic data.  Requires positive x, y.
ExponentFit fit_power_law(std::span<const double> x,
                          std::span<const double> y);

}  // namespace photon
