#include "photon/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "photon/errors.hpp"

namespace photon {

namespace {

// Below this argument the backward recurrence has nothing to gain and the
// power series converges in a handful of terms.
constexpr double kSeriesThreshold = 1e-3;

// J_k(x) by its ascending power series; only used for tiny |x| where two or
// three terms already reach machine precision.  term_0 = (x/2)^k / k! is
// built as a running product so no factorial is ever materialized.
double bessel_series(double x, int k) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int j = 1; j <= k; ++j) term *= half / static_cast<double>(j);
  double sum = term;
  const double q = -half * half;
  for (int m = 0; m < 24 && term != 0.0; ++m) {
    term *= q / (static_cast<double>(m + 1) * static_cast<double>(m + k + 1));
    sum += term;
    if (std::abs(term) <= 1e-20 * std::abs(sum)) break;
  }
  return sum;
}

// Rows are evaluated all over parameter scans, so keep the Miller start
// index generous but not extravagant: high enough that the arbitrary seed
// has decayed below double precision by the time the recurrence reaches the
// requested orders.
int miller_start(double ax, int order) {
  const int base = std::max(order, static_cast<int>(std::ceil(ax)));
  return base + 40 +
         static_cast<int>(std::ceil(std::sqrt(40.0 * (base + 1))));
}

}  // namespace

BesselRow bessel_row(double xi, int order) {
  if (order < 1)
    throw std::invalid_argument("bessel_row: order must be >= 1");
  if (!std::isfinite(xi))
    throw std::invalid_argument("bessel_row: xi must be finite");

  BesselRow row;
  row.xi = xi;
  row.order = order;
  row.values.assign(static_cast<std::size_t>(order) + 1, 0.0);

  const double ax = std::abs(xi);
  if (ax < kSeriesThreshold) {
    for (int k = 0; k <= order; ++k) row.values[k] = bessel_series(ax, k);
  } else {
    // Miller's algorithm: run J_{k-1} = (2k/x) J_k - J_{k+1} downward from an
    // arbitrary seed far above the turnover, then normalize the whole row at
    // once with J_0 + 2 sum_m J_{2m} = 1.  The minimal solution (the one we
    // want) dominates downward recurrence, so the seed error dies off
    // superexponentially.
    const int start = miller_start(ax, order);
    std::vector<double> buf(static_cast<std::size_t>(start) + 1, 0.0);
    buf[start] = 1.0;
    double above = 0.0;  // J_{k+1} relative to the running normalization
    for (int k = start; k >= 1; --k) {
      const double below = (2.0 * k / ax) * buf[k] - above;
      above = buf[k];
      buf[k - 1] = below;
      if (std::abs(below) > 1e250) {
        // The unnormalized row grows without bound as k decreases; rescale
        // everything accumulated so far to keep it finite.  Entries that
        // underflow to zero here were negligible anyway.
        for (int j = k - 1; j <= start; ++j) buf[j] *= 1e-250;
        above *= 1e-250;
      }
    }
    double norm = buf[0];
    for (int k = 2; k <= start; k += 2) norm += 2.0 * buf[k];
    const double inv = 1.0 / norm;
    for (int k = 0; k <= order; ++k) row.values[k] = buf[k] * inv;
  }

  if (xi < 0.0) {
    // J_k(-x) = (-1)^k J_k(x)
    for (int k = 1; k <= order; k += 2) row.values[k] = -row.values[k];
  }

  // The truncated quadratic sum J_0^2 + 2 sum_{k>=1} J_k^2 is < 1 for exact
  // values; keep rounding from pushing the computed row past that bound so
  // the normalization invariant holds with the equality side intact.
  double q = row.values[0] * row.values[0];
  for (int k = 1; k <= order; ++k) q += 2.0 * row.values[k] * row.values[k];
  if (q > 1.0) {
    const double scale =
        std::sqrt((1.0 - 4.0 * std::numeric_limits<double>::epsilon()) / q);
    for (double& v : row.values) v *= scale;
  }
  return row;
}

int truncation_order(double xi, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("truncation_order: tol must be > 0");
  if (!std::isfinite(xi))
    throw std::invalid_argument("truncation_order: xi must be finite");

  int probe = std::max(16, static_cast<int>(std::ceil(std::abs(xi))) + 60);
  for (int attempt = 0; attempt < 6; ++attempt, probe *= 2) {
    const BesselRow row = bessel_row(xi, probe);
    double partial = row.values[0] * row.values[0];
    for (int k = 1; k <= probe; ++k) {
      partial += 2.0 * row.values[k] * row.values[k];
      // The 0.9 safety factor keeps the promised tail bound intact when the
      // partial sum is later re-evaluated on a row truncated exactly at the
      // returned order (slightly different rounding than this probe row).
      if (k >= 12 && 1.0 - partial < 0.9 * tol) return k;
    }
  }
  throw NoConvergence("truncation_order: tail below tol not reached (xi = " +
                      std::to_string(xi) + ")");
}

namespace {

double bessel_j0(double x) { return bessel_row(x, 12).values[0]; }
double bessel_j1(double x) { return bessel_row(x, 12).values[1]; }

// Bisect fn on [lo, hi] (fn(lo) and fn(hi) of opposite sign) to full double
// resolution.
template <typename Fn>
double bisect_zero(Fn&& fn, double lo, double hi) {
  double flo = fn(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at machine resolution
    const double fm = fn(mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// McMahon's asymptotic zero location, good to ~1e-3 already for n = 1;
// used only to seed a safe bisection bracket.
double mcmahon_zero(int n, int nu) {
  const double b =
      (static_cast<double>(n) + 0.5 * nu - 0.25) * std::numbers::pi;
  const double mu = 4.0 * nu * nu;
  return b - (mu - 1.0) / (8.0 * b);
}

template <typename Fn>
double bessel_zero_impl(Fn&& fn, int n, int nu) {
  if (n < 1) throw std::invalid_argument("bessel zero index must be >= 1");
  const double guess = mcmahon_zero(n, nu);
  double lo = guess - 0.5;
  double hi = guess + 0.5;
  // McMahon is already inside +-0.1 for every n >= 1; widen defensively if a
  // bracket check ever disagrees.
  for (int grow = 0; grow < 8 && (fn(lo) < 0.0) == (fn(hi) < 0.0); ++grow) {
    lo -= 0.25;
    hi += 0.25;
  }
  return bisect_zero(fn, lo, hi);
}

}  // namespace

double bessel_j0_zero(int n) { return bessel_zero_impl(bessel_j0, n, 0); }

double bessel_j1_zero(int n) { return bessel_zero_impl(bessel_j1, n, 1); }

namespace {

constexpr double kLorentzTailTol = 1e-12;

}  // namespace

double lorentz_sum(double xi, double gamma, double delta) {
  if (!std::isfinite(xi) || !std::isfinite(gamma) || !std::isfinite(delta))
    throw std::invalid_argument("lorentz_sum: arguments must be finite");
  const int order = truncation_order(xi, kLorentzTailTol);
  const BesselRow row = bessel_row(xi, order);
  const double g2 = gamma * gamma;

  double total = 0.0;
  const double j0 = row.values[0];
  if (j0 != 0.0) {
    const double d0 = g2 + 4.0 * delta * delta;
    if (d0 == 0.0)
      throw DivergentTerm(
          "lorentz_sum: gamma = 0 with resonant integer detuning k = 0");
    total += (j0 * j0) / d0;
  }
  // k and -k paired symmetrically: J_{-k}^2 = J_k^2, only the Lorentzian
  // denominators differ once delta != 0.
  for (int k = 1; k <= order; ++k) {
    const double jk = row.values[k];
    if (jk == 0.0) continue;  // a vanishing numerator contributes nothing
    const double dm = g2 + 4.0 * (k - delta) * (k - delta);
    const double dp = g2 + 4.0 * (k + delta) * (k + delta);
    if (dm == 0.0 || dp == 0.0)
      throw DivergentTerm(
          "lorentz_sum: gamma = 0 with resonant integer detuning k = " +
          std::to_string(dm == 0.0 ? k : -k));
    total += (jk * jk) * (1.0 / dm + 1.0 / dp);
  }
  return total;
}

LorentzPartials lorentz_partials(double xi, double gamma) {
  if (!std::isfinite(xi) || !std::isfinite(gamma))
    throw std::invalid_argument("lorentz_partials: arguments must be finite");
  if (gamma == 0.0)
    throw DivergentTerm("lorentz_partials: gamma = 0 makes the k = 0 term "
                        "divergent");
  const int order = truncation_order(xi, kLorentzTailTol);
  // The third xi-derivative of J_k reaches three orders beyond k.
  const BesselRow row = bessel_row(xi, order + 3);
  const double g2 = gamma * gamma;

  LorentzPartials out;
  for (int k = 0; k <= order; ++k) {
    const double weight = k == 0 ? 1.0 : 2.0;
    const double den = g2 + 4.0 * static_cast<double>(k) * k;
    const double j = row[k];
    // Derivative ladders in the order index.
    const double j1 = 0.5 * (row[k - 1] - row[k + 1]);
    const double j2 = 0.25 * (row[k - 2] - 2.0 * j + row[k + 2]);
    const double j3 = 0.125 * (row[k - 3] - 3.0 * row[k - 1] +
                               3.0 * row[k + 1] - row[k + 3]);
    const double dinv_dg = -2.0 * gamma / (den * den);  // d(1/den)/dgamma

    out.s += weight * j * j / den;
    out.s_x += weight * 2.0 * j * j1 / den;
    out.s_xx += weight * 2.0 * (j1 * j1 + j * j2) / den;
    out.s_xxx += weight * (6.0 * j1 * j2 + 2.0 * j * j3) / den;
    out.s_xg += weight * 2.0 * j * j1 * dinv_dg;
    out.s_xxg += weight * 2.0 * (j1 * j1 + j * j2) * dinv_dg;
  }
  return out;
}

double lorentz_sum_dxi(double xi, double gamma) {
  return lorentz_partials(xi, gamma).s_x;
}

}  // namespace photon
