#include "photon/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "photon/bessel.hpp"
#include "photon/errors.hpp"
#include "pair_roots.hpp"

namespace photon {

double stationarity_residual(double xi, double gamma) {
  if (!std::isfinite(xi) || !std::isfinite(gamma))
    throw std::invalid_argument("stationarity_residual: arguments must be "
                                "finite");
  const int order = truncation_order(xi, 1e-12);
  const BesselRow row = bessel_row(xi, order + 1);
  const double g2 = gamma * gamma;
  double sum = 0.0;
  for (int k = 1; k <= order; ++k)
    sum += row.values[k] * (row.values[k - 1] - row.values[k + 1]) /
           (g2 + 4.0 * static_cast<double>(k) * k);
  return row.values[0] * row.values[1] - g2 * sum;
}

double g_form(double xi, double gamma) {
  if (!std::isfinite(xi) || !std::isfinite(gamma))
    throw std::invalid_argument("g_form: arguments must be finite");
  const int order = truncation_order(xi, 1e-12);
  const BesselRow row = bessel_row(xi, order + 1);
  const double g2 = gamma * gamma;
  double sum = 0.0;
  for (int k = 1; k <= order; ++k)
    sum += row.values[k] * (row.values[k - 1] - row.values[k + 1]) /
           (g2 + 4.0 * static_cast<double>(k) * k);
  return g2 * sum / row.values[1];
}

namespace {

// Shorthand used throughout the root machinery below.
double sx_at(double xi, double gamma) {
  return lorentz_partials(xi, gamma).s_x;
}

// Bisect a bracketed sign change of fn down to machine-scale width.
template <typename Fn>
double bisect_root(Fn&& fn, double a, double b, double fa) {
  for (int i = 0; i < 90 && b - a > 1e-13; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = fn(m);
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Golden-section maximization of fn on [a, b]; assumes a single interior
// maximum there.  Returns (argmax, max value).
template <typename Fn>
std::pair<double, double> golden_max(Fn&& fn, double a, double b) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  while (b - a > 1e-11) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = fn(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, fn(xm)};
}

}  // namespace

namespace detail {

PairRoots find_pair_roots(double gamma, int n) {
  if (n < 1)
    throw std::invalid_argument("find_pair_roots: n must be >= 1");
  if (!(gamma > 0.0))
    throw std::invalid_argument("find_pair_roots: gamma must be > 0");

  // The pair lives between the n-th zero of J_0 (bare maximum) and the n-th
  // zero of J_1 (bare minimum); pad the window on both sides so the
  // gamma-shifted roots stay inside it all the way to the fold.
  const double lo = std::max(0.05, bessel_j0_zero(n) - 0.3);
  const double hi = bessel_j1_zero(n) + 0.3;
  auto fn = [gamma](double x) { return sx_at(x, gamma); };

  const double step = 1e-3;
  const int m = static_cast<int>(std::ceil((hi - lo) / step));
  std::vector<double> xs(static_cast<std::size_t>(m) + 1);
  std::vector<double> fs(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / m;
    fs[i] = fn(xs[i]);
  }

  PairRoots out;

  // Usual case: the scan sees the up-crossing (tau maximum) followed by the
  // down-crossing (tau minimum).
  int up = -1, down = -1;
  for (int i = 0; i < m; ++i) {
    if (up < 0) {
      if (fs[i] < 0.0 && fs[i + 1] >= 0.0) up = i;
    } else if (fs[i] >= 0.0 && fs[i + 1] < 0.0) {
      down = i;
      break;
    }
  }
  if (up >= 0 && down >= 0) {
    out.found = true;
    out.x_max = bisect_root(fn, xs[up], xs[up + 1], fs[up]);
    out.x_min = bisect_root(fn, xs[down], xs[down + 1], fs[down]);
    const auto [hx, hv] = golden_max(fn, out.x_max, out.x_min);
    out.hump_x = hx;
    out.hump_val = hv;
    return out;
  }

  // Near the fold the positive region of dS/dxi is narrower than the scan
  // step.  Refine the hump around the coarse argmax: the pair exists exactly
  // when the refined hump still pokes above zero.
  int istar = 0;
  for (int i = 1; i <= m; ++i)
    if (fs[i] > fs[istar]) istar = i;
  if (istar <= 0 || istar >= m) return out;  // hump not interior: no pair

  const auto [hx, hv] = golden_max(fn, xs[istar - 1], xs[istar + 1]);
  out.hump_x = hx;
  out.hump_val = hv;
  if (!(hv > 0.0)) return out;  // annihilated

  out.found = true;
  out.x_max = bisect_root(fn, xs[istar - 1], hx, fs[istar - 1]);
  // For the falling flank, seed the bisection with the (positive) hump value
  // on the left and the negative grid point on the right.
  out.x_min = bisect_root(fn, hx, xs[istar + 1], hv);
  return out;
}

}  // namespace detail

std::vector<ExtremumRecord> find_extrema(double gamma, double xi_lo,
                                         double xi_hi) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("find_extrema: gamma must be > 0");
  if (!std::isfinite(xi_lo) || !std::isfinite(xi_hi) || xi_hi < xi_lo)
    throw std::invalid_argument("find_extrema: bad xi interval");

  std::vector<ExtremumRecord> records;

  // xi = 0 is a stationary point for every gamma (parity: F is odd in xi)
  // and always a minimum of <tau>; it belongs to no Bessel zero, so n = 0.
  if (xi_lo <= 0.0 && xi_hi >= 0.0)
    records.push_back({0.0, ExtremumKind::Minimum, gamma, 0});

  // Scan F for sign changes on the positive part of the interval, starting
  // clear of the parity root so it is not double counted.
  const double scan_lo = std::max(xi_lo, 0.005);
  if (scan_lo >= xi_hi) return records;

  auto fn = [gamma](double x) { return stationarity_residual(x, gamma); };
  const double step = 0.01;
  const int nsteps = static_cast<int>(std::ceil((xi_hi - scan_lo) / step));

  // Precompute the Bessel-zero ladders used to label the records.
  std::vector<double> j0_zeros, j1_zeros;
  for (int k = 1; k <= 64; ++k) {
    j0_zeros.push_back(bessel_j0_zero(k));
    if (j0_zeros.back() > xi_hi + 4.0) break;
  }
  for (int k = 1; k <= 64; ++k) {
    j1_zeros.push_back(bessel_j1_zero(k));
    if (j1_zeros.back() > xi_hi + 4.0) break;
  }
  auto nearest = [](const std::vector<double>& zeros, double x) {
    int best = 1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      const double d = std::abs(zeros[i] - x);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i) + 1;
      }
    }
    return best;
  };

  double prev_x = scan_lo;
  double prev_f = fn(prev_x);
  for (int i = 1; i <= nsteps; ++i) {
    const double x = std::min(xi_hi, scan_lo + step * i);
    const double f = fn(x);
    if (prev_f != 0.0 && (prev_f < 0.0) != (f < 0.0)) {
      const double root = bisect_root(fn, prev_x, x, prev_f);
      // Classification by the slope of F: F proportional to -dS/dxi, so F
      // falling through zero means S has a minimum there, i.e. <tau> has a
      // maximum.
      const double h = 1e-6;
      const double slope = (fn(root + h) - fn(root - h)) / (2.0 * h);
      ExtremumRecord rec;
      rec.xi_star = root;
      rec.gamma = gamma;
      if (slope < 0.0) {
        rec.kind = ExtremumKind::Maximum;
        rec.n = nearest(j0_zeros, root);
      } else {
        rec.kind = ExtremumKind::Minimum;
        rec.n = nearest(j1_zeros, root);
      }
      records.push_back(rec);
    }
    prev_x = x;
    prev_f = f;
  }
  return records;
}

double small_gamma_shift(int n, double gamma) {
  if (n < 1)
    throw std::invalid_argument("small_gamma_shift: n must be >= 1");
  if (!std::isfinite(gamma) || gamma < 0.0)
    throw std::invalid_argument("small_gamma_shift: gamma must be >= 0");
  const double xi_n = bessel_j0_zero(n);
  const int order = truncation_order(xi_n, 1e-12);
  const BesselRow row = bessel_row(xi_n, order + 1);
  const double g2 = gamma * gamma;
  double sum = 0.0;
  for (int k = 1; k <= order; ++k)
    sum += row.values[k] * (row.values[k + 1] - row.values[k - 1]) /
           (g2 + 4.0 * static_cast<double>(k) * k);
  const double j1 = row.values[1];
  return g2 / (j1 * j1) * sum;
}

namespace {

enum class Branch { MaxRoot, MinRoot };

struct MergeResult {
  double gamma = 0.0;
  double xi_seed = 0.0;  // hump location at the last gamma with a pair
};

// Bisect the pair's existence in gamma, watching one named branch: the
// branch's root must exist and carry the right S curvature.  Both branches
// vanish together at a fold, so the two merge gammas must agree; computing
// them independently is the cross-check.
MergeResult bisect_merge(int n, Branch br) {
  double seed = 0.0;
  auto probe = [&](double g) {
    const detail::PairRoots pr = detail::find_pair_roots(g, n);
    if (!pr.found) return false;
    const double x = br == Branch::MaxRoot ? pr.x_max : pr.x_min;
    const double sxx = lorentz_partials(x, g).s_xx;
    const bool ok = br == Branch::MaxRoot ? sxx > 0.0 : sxx < 0.0;
    if (ok) seed = pr.hump_x;
    return ok;
  };

  double lo = 1.0;
  if (!probe(lo))
    throw NoPairFound("no max-min pair for n = " + std::to_string(n) +
                      " at the continuation start gamma = 1");
  double hi = 2.0;
  while (probe(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0)
      throw NoConvergence("pair for n = " + std::to_string(n) +
                          " did not annihilate below gamma = 64");
  }
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid))
      lo = mid;
    else
      hi = mid;
  }
  return {0.5 * (lo + hi), seed};
}

}  // namespace

CriticalPointDetail find_critical_point_detail(int n) {
  if (n < 1)
    throw std::invalid_argument("find_critical_point_detail: n must be >= 1");
  const MergeResult from_max = bisect_merge(n, Branch::MaxRoot);
  const MergeResult from_min = bisect_merge(n, Branch::MinRoot);

  // Newton polish of the fold conditions {dS/dxi = 0, d2S/dxi2 = 0} in
  // (xi, gamma), with the analytic Jacobian
  //   [ s_xx   s_xg  ]
  //   [ s_xxx  s_xxg ].
  // At the fold s_xx = 0, so det = -s_xg * s_xxx, which is nonzero there --
  // the iteration is regular even though the root being polished is a
  // degenerate extremum in xi alone.
  double xi = 0.5 * (from_max.xi_seed + from_min.xi_seed);
  double gamma = 0.5 * (from_max.gamma + from_min.gamma);
  bool converged = false;
  for (int iter = 0; iter < 60; ++iter) {
    const LorentzPartials lp = lorentz_partials(xi, gamma);
    const double det = lp.s_xx * lp.s_xxg - lp.s_xg * lp.s_xxx;
    if (det == 0.0 || !std::isfinite(det))
      throw NoConvergence("fold polish: singular Jacobian");
    const double dxi = -(lp.s_xxg * lp.s_x - lp.s_xg * lp.s_xx) / det;
    const double dg = -(lp.s_xx * lp.s_xx - lp.s_xxx * lp.s_x) / det;
    xi += dxi;
    gamma += dg;
    if (std::abs(dxi) + std::abs(dg) < 1e-13) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergence("fold polish did not converge for n = " +
                        std::to_string(n));

  const LorentzPartials lp = lorentz_partials(xi, gamma);
  CriticalPointDetail out;
  out.point = CriticalPoint{xi, gamma, n};
  out.gamma_merge_max = from_max.gamma;
  out.gamma_merge_min = from_min.gamma;
  out.resid_s1 = std::abs(lp.s_x);
  out.resid_s2 = std::abs(lp.s_xx);
  return out;
}

CriticalPoint find_critical_point(int n) {
  return find_critical_point_detail(n).point;
}

ExponentFit fit_power_law(std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("fit_power_law: size mismatch");
  const std::size_t n = x.size();
  if (n < 2)
    throw std::invalid_argument("fit_power_law: need at least 2 points");

  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("fit_power_law: data must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_power_law: x values are all equal");
  const double slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (my + slope * (lx[i] - mx));
    ss_res += r * r;
  }
  ExponentFit fit;
  fit.beta = slope;
  fit.ci_half_width =
      n > 2 ? 2.0 * std::sqrt(ss_res / static_cast<double>(n - 2) / sxx) : 0.0;
  fit.residual_rms = std::sqrt(ss_res / static_cast<double>(n));
  fit.n_points = static_cast<int>(n);
  fit.window_lo = *std::min_element(x.begin(), x.end());
  fit.window_hi = *std::max_element(x.begin(), x.end());
  return fit;
}

ExponentFit critical_exponent_fit(int n) {
  const CriticalPoint cp = find_critical_point(n);

  std::vector<double> xs, ys;
  double window_lo = cp.gamma_cr, window_hi = 0.0;
  for (int j = 1; j <= 8; ++j) {
    const double gj = cp.gamma_cr * (1.0 - 0.1 * std::pow(2.0, -j));
    const detail::PairRoots pr = detail::find_pair_roots(gj, n);
    if (!pr.found) continue;
    const double dist = cp.xi_cr - pr.x_max;
    if (!(dist > 0.0)) continue;
    xs.push_back(cp.gamma_cr - gj);
    ys.push_back(dist);
    window_lo = std::min(window_lo, gj);
    window_hi = std::max(window_hi, gj);
  }
  if (xs.size() < 5)
    throw FitWindowTooNarrow(
        "fewer than 5 ladder points still carry a maximum near the fold");

  ExponentFit fit = fit_power_law(xs, ys);
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  return fit;
}

}  // namespace photon
