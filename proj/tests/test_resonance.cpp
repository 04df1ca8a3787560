#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "photon/bessel.hpp"
#include "photon/errors.hpp"
#include "photon/resonance.hpp"

using photon::CriticalPoint;
using photon::CriticalPointDetail;
using photon::ExponentFit;
using photon::ExtremumKind;
using photon::ExtremumRecord;

TEST_CASE("stationarity residual against the power-series oracle") {
  for (const double g : {0.25, 0.5, 1.0, 1.7, 2.5}) {
    for (double xi = 0.3; xi < 8.0; xi += 0.7) {
      const long double want = oracle::stationarity_f(xi, g);
      const double got = photon::stationarity_residual(xi, g);
      INFO("xi = ", xi, ", gamma = ", g);
      CHECK(std::abs(got - (double)want) <
            1e-14 + 1e-12 * std::abs((double)want));
    }
  }
  CHECK_THROWS_AS(photon::stationarity_residual(std::nan(""), 1.0),
                  std::invalid_argument);
}

TEST_CASE("stationarity residual is proportional to -dS/dxi") {
  // F = -(gamma^2 / 2) dS/dxi ties the root finder to the quantity the
  // closed-form <tau> actually extremizes.  Two independent summation
  // shapes, one identity.
  for (const double g : {0.3, 1.0, 2.1}) {
    for (double xi = 0.4; xi < 7.5; xi += 0.55) {
      const double f = photon::stationarity_residual(xi, g);
      const double sx = photon::lorentz_sum_dxi(xi, g);
      const double want = -0.5 * g * g * sx;
      INFO("xi = ", xi, ", gamma = ", g);
      CHECK(std::abs(f - want) < 1e-13 + 1e-10 * std::abs(want));
    }
  }
}

TEST_CASE("g_form intersects J_0 exactly at the stationary points") {
  const std::vector<ExtremumRecord> recs = photon::find_extrema(1.0, 2.0, 7.2);
  REQUIRE(!recs.empty());
  for (const auto& rec : recs) {
    const double j0 = photon::bessel_row(rec.xi_star, 12).values[0];
    const double g = photon::g_form(rec.xi_star, rec.gamma);
    INFO("xi* = ", rec.xi_star);
    CHECK(std::abs(j0 - g) < 1e-9);
  }
}

TEST_CASE("extremum census at gamma = 1 (both pairs alive)") {
  const std::vector<ExtremumRecord> recs = photon::find_extrema(1.0, 2.0, 7.2);
  REQUIRE(recs.size() == 4);

  // Frozen locations (bisection-refined stationarity roots).
  const double want_xi[4] = {2.58609061533, 3.76764380608, 5.60804957755,
                             6.97997715365};
  const ExtremumKind want_kind[4] = {ExtremumKind::Maximum,
                                     ExtremumKind::Minimum,
                                     ExtremumKind::Maximum,
                                     ExtremumKind::Minimum};
  const int want_n[4] = {1, 1, 2, 2};
  for (int i = 0; i < 4; ++i) {
    CHECK(recs[i].xi_star == doctest::Approx(want_xi[i]).epsilon(1e-8));
    CHECK(recs[i].kind == want_kind[i]);
    CHECK(recs[i].n == want_n[i]);
    CHECK(recs[i].gamma == 1.0);
  }

  // Maxima sit right of their J_0 zero (the small-gamma shift is positive),
  // minima left of their J_1 zero.
  CHECK(recs[0].xi_star > photon::bessel_j0_zero(1));
  CHECK(recs[2].xi_star > photon::bessel_j0_zero(2));
  CHECK(recs[1].xi_star < photon::bessel_j1_zero(1));
  CHECK(recs[3].xi_star < photon::bessel_j1_zero(2));
}

TEST_CASE("extremum census above the critical linewidth is empty") {
  CHECK(photon::find_extrema(2.5, 2.0, 7.2).empty());
  CHECK(photon::find_extrema(1.0, 4.5, 5.0).empty());  // between extrema
}

TEST_CASE("the parity-pinned minimum at xi = 0") {
  // S is even in xi with S''(0) > 0, so xi = 0 is always a minimum of
  // <tau>... at every gamma, and it is reported with n = 0.
  for (const double g : {0.25, 1.0, 2.5}) {
    const std::vector<ExtremumRecord> recs = photon::find_extrema(g, 0.0, 1.0);
    REQUIRE(!recs.empty());
    CHECK(recs.front().xi_star == 0.0);
    CHECK(recs.front().kind == ExtremumKind::Minimum);
    CHECK(recs.front().n == 0);
  }
  // A window that excludes 0 does not report it.
  CHECK(photon::find_extrema(1.0, 0.5, 1.5).empty());
}

TEST_CASE("full census across [0, 10] at gamma = 1") {
  const std::vector<ExtremumRecord> recs =
      photon::find_extrema(1.0, 0.0, 10.0);
  REQUIRE(recs.size() == 6);
  CHECK(recs[0].xi_star == 0.0);
  CHECK(recs[5].xi_star == doctest::Approx(8.71094217405).epsilon(1e-8));
  CHECK(recs[5].kind == ExtremumKind::Maximum);
  CHECK(recs[5].n == 3);
  // Maxima and minima alternate.
  for (std::size_t i = 1; i < recs.size(); ++i)
    CHECK(recs[i].kind != recs[i - 1].kind);
}

TEST_CASE("find_extrema input checking") {
  CHECK_THROWS_AS(photon::find_extrema(0.0, 0.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(photon::find_extrema(-1.0, 0.0, 5.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(photon::find_extrema(1.0, 5.0, 4.0), std::invalid_argument);
}

TEST_CASE("small-gamma shift: sign, scaling, and census agreement") {
  CHECK(photon::small_gamma_shift(1, 0.0) == 0.0);
  for (int n = 1; n <= 3; ++n) CHECK(photon::small_gamma_shift(n, 0.25) > 0.0);

  // Pure Gamma^2 law in the gamma -> 0 limit.
  const double ratio =
      photon::small_gamma_shift(1, 2e-4) / photon::small_gamma_shift(1, 1e-4);
  CHECK(ratio == doctest::Approx(4.0).epsilon(1e-6));

  // Leading-order shift against the exact stationarity root at gamma = 0.2
  // (the measured defect is ~1.4%; allow 5%).
  const double shift = photon::small_gamma_shift(1, 0.2);
  const std::vector<ExtremumRecord> recs =
      photon::find_extrema(0.2, 2.0, 3.0);
  REQUIRE(!recs.empty());
  REQUIRE(recs.front().kind == ExtremumKind::Maximum);
  const double exact = recs.front().xi_star - photon::bessel_j0_zero(1);
  CHECK(std::abs(shift - exact) < 0.05 * exact);

  CHECK_THROWS_AS(photon::small_gamma_shift(0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(photon::small_gamma_shift(1, -0.1), std::invalid_argument);
}

TEST_CASE("critical points: frozen locations and fold conditions") {
  const CriticalPointDetail d1 = photon::find_critical_point_detail(1);
  CHECK(d1.point.gamma_cr == doctest::Approx(1.70850040127).epsilon(1e-6));
  CHECK(d1.point.xi_cr == doctest::Approx(3.27573880647).epsilon(1e-6));
  CHECK(d1.point.n == 1);

  const CriticalPointDetail d2 = photon::find_critical_point_detail(2);
  CHECK(d2.point.gamma_cr == doctest::Approx(2.09152178192).epsilon(1e-6));
  CHECK(d2.point.xi_cr == doctest::Approx(6.38476272395).epsilon(1e-6));
  CHECK(d2.point.n == 2);

  for (const auto& d : {d1, d2}) {
    // Both branch-existence bisections see the same annihilation gamma...
    CHECK(std::abs(d.gamma_merge_max - d.gamma_merge_min) <= 1e-6);
    // ... the polished point satisfies the fold conditions...
    CHECK(d.resid_s1 <= 1e-10);
    CHECK(d.resid_s2 <= 1e-10);
    // ... and the Newton polish stays at the bisected bracket.
    CHECK(std::abs(d.gamma_merge_max - d.point.gamma_cr) <= 1e-6);
  }

  // The convenience wrapper returns the same point.
  const CriticalPoint p1 = photon::find_critical_point(1);
  CHECK(p1.gamma_cr == d1.point.gamma_cr);
  CHECK(p1.xi_cr == d1.point.xi_cr);

  CHECK_THROWS_AS(photon::find_critical_point(0), std::invalid_argument);
}

TEST_CASE("the pair exists just below gamma_cr and is gone just above") {
  const CriticalPoint cp = photon::find_critical_point(1);
  const std::vector<ExtremumRecord> below =
      photon::find_extrema(cp.gamma_cr * 0.99, 2.6, 4.0);
  REQUIRE(below.size() == 2);
  CHECK(below[0].kind == ExtremumKind::Maximum);
  CHECK(below[1].kind == ExtremumKind::Minimum);
  // Both roots approach xi_cr from either side.
  CHECK(below[0].xi_star < cp.xi_cr);
  CHECK(below[1].xi_star > cp.xi_cr);
  CHECK(photon::find_extrema(cp.gamma_cr * 1.01, 2.6, 4.0).empty());
}

TEST_CASE("fold exponent fit: square-root approach") {
  const ExponentFit fit = photon::critical_exponent_fit(1);
  CHECK(fit.beta > 0.45);
  CHECK(fit.beta < 0.55);
  CHECK(fit.ci_half_width < 0.02);
  CHECK(fit.n_points >= 5);
  CHECK(fit.window_lo < fit.window_hi);
  CHECK(fit.window_hi < photon::find_critical_point(1).gamma_cr);
  CHECK(fit.residual_rms < 0.05);
}

TEST_CASE("fit_power_law on synthetic data") {
  // Exact power law: recovered to rounding.
  std::vector<double> x, y;
  for (int i = 1; i <= 9; ++i) {
    x.push_back(0.1 * i);
    y.push_back(3.0 * std::sqrt(0.1 * i));
  }
  const ExponentFit exact = photon::fit_power_law(x, y);
  CHECK(exact.beta == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(exact.residual_rms < 1e-13);
  CHECK(exact.n_points == 9);
  CHECK(exact.window_lo == doctest::Approx(0.1));
  CHECK(exact.window_hi == doctest::Approx(0.9));

  // Known multiplicative perturbation: slope still recovered within the
  // quoted confidence interval.
  std::vector<double> y2 = y;
  for (std::size_t i = 0; i < y2.size(); ++i)
    y2[i] *= 1.0 + 0.01 * ((i % 2 == 0) ? 1.0 : -1.0);
  const ExponentFit noisy = photon::fit_power_law(x, y2);
  CHECK(std::abs(noisy.beta - 0.5) < 3.0 * noisy.ci_half_width + 0.02);
  CHECK(noisy.ci_half_width > 0.0);

  // Interface misuse.
  std::vector<double> xs{1.0, 2.0};
  std::vector<double> bad{1.0};
  CHECK_THROWS_AS(photon::fit_power_law(xs, bad), std::invalid_argument);
  std::vector<double> one{1.0};
  CHECK_THROWS_AS(photon::fit_power_law(one, one), std::invalid_argument);
  std::vector<double> neg{1.0, -2.0};
  CHECK_THROWS_AS(photon::fit_power_law(xs, neg), std::invalid_argument);
  std::vector<double> same{2.0, 2.0};
  std::vector<double> ys{1.0, 2.0};
  CHECK_THROWS_AS(photon::fit_power_law(same, ys), std::invalid_argument);
}
