#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "photon/bessel.hpp"
#include "photon/errors.hpp"

using photon::BesselRow;

TEST_CASE("bessel_row matches the power-series oracle") {
  // Arguments straddle the series/recurrence switchover and both J_0 zeros.
  // Elements are compared at 1e-13 relative, falling back to 1e-14 absolute
  // for elements that sit on a zero of J_k (the grid includes two of them),
  // where no normalized recurrence can hold a relative target.
  const std::vector<double> grid{1e-4, 9e-4, 0.002, 0.5,  1.0, 2.404825557695773,
                                 3.831705970207512, 5.52, 8.0, 10.0};
  for (const double xi : grid) {
    const int order = photon::truncation_order(xi, 1e-12);
    const BesselRow row = photon::bessel_row(xi, order);
    REQUIRE(static_cast<int>(row.values.size()) == order + 1);
    for (int k = 0; k <= order; ++k) {
      const long double want = oracle::bessel_j(k, xi);
      const double abs_err =
          static_cast<double>(fabsl((long double)row.values[k] - want));
      INFO("xi = ", xi, ", k = ", k, ", J_k = ", row.values[k]);
      CHECK((abs_err <= 1e-14 ||
             oracle::rel_err(row.values[k], want) < 1e-13));
    }
  }
}

TEST_CASE("signed-order access applies the parity identity exactly") {
  const BesselRow row = photon::bessel_row(2.7, 16);
  for (int k = 1; k <= 16; ++k) {
    CHECK(row[-k] == ((k & 1) ? -row[k] : row[k]));
  }
  // Beyond the stored order the truncated tail reads as zero.
  CHECK(row[17] == 0.0);
  CHECK(row[-17] == 0.0);
}

TEST_CASE("negative argument flips odd orders exactly") {
  const BesselRow pos = photon::bessel_row(3.3, 14);
  const BesselRow neg = photon::bessel_row(-3.3, 14);
  for (int k = 0; k <= 14; ++k) {
    CHECK(neg.values[k] == ((k & 1) ? -pos.values[k] : pos.values[k]));
  }
}

TEST_CASE("row endpoints: J_k(0)") {
  const BesselRow row = photon::bessel_row(0.0, 12);
  CHECK(row.values[0] == 1.0);
  for (int k = 1; k <= 12; ++k) CHECK(row.values[k] == 0.0);
}

TEST_CASE("bessel_row argument checking") {
  CHECK_THROWS_AS(photon::bessel_row(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(photon::bessel_row(std::nan(""), 8), std::invalid_argument);
}

TEST_CASE("truncation_order meets its tail bound on the returned row") {
  for (int i = 0; i <= 100; ++i) {
    const double xi = 0.1 * i;
    const int order = photon::truncation_order(xi, 1e-12);
    CHECK(order >= 12);
    const BesselRow row = photon::bessel_row(xi, order);
    double q = row.values[0] * row.values[0];
    for (int k = 1; k <= order; ++k) q += 2.0 * row.values[k] * row.values[k];
    INFO("xi = ", xi, ", order = ", order);
    CHECK(q <= 1.0);
    CHECK(1.0 - q < 1e-12);
  }
  CHECK_THROWS_AS(photon::truncation_order(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(photon::truncation_order(1.0, -1e-9), std::invalid_argument);
}

TEST_CASE("J_0 and J_1 zeros against frozen references") {
  // 15-digit literals; the locations come out of bisection on the row
  // itself, so agreement at 1e-13 exercises the whole evaluation path.
  const std::vector<double> j0{2.404825557695773, 5.520078110286311,
                               8.653727912911013, 11.791534439014281,
                               14.930917708487786};
  const std::vector<double> j1{3.831705970207512, 7.015586669815619,
                               10.173468135062722, 13.323691936314223,
                               16.470630050877634};
  for (int n = 1; n <= 5; ++n) {
    CHECK(std::abs(photon::bessel_j0_zero(n) - j0[n - 1]) <=
          1e-13 * j0[n - 1]);
    CHECK(std::abs(photon::bessel_j1_zero(n) - j1[n - 1]) <=
          1e-13 * j1[n - 1]);
    // And directly: the oracle series vanishes there.
    CHECK(std::abs((double)oracle::bessel_j(0, photon::bessel_j0_zero(n))) <
          1e-13);
    CHECK(std::abs((double)oracle::bessel_j(1, photon::bessel_j1_zero(n))) <
          1e-13);
  }
  CHECK_THROWS_AS(photon::bessel_j0_zero(0), std::invalid_argument);
  CHECK_THROWS_AS(photon::bessel_j1_zero(-1), std::invalid_argument);
}

TEST_CASE("lorentz_sum matches direct summation") {
  struct Point {
    double xi, gamma, delta;
  };
  const std::vector<Point> pts{
      {1.0, 0.5, 0.0},  {2.404825557695773, 0.5, 0.0}, {1.14, 1.0 / 7.0, 0.5},
      {5.52, 2.0, 0.25}, {8.0, 3.0, 1.0},  {0.3, 0.05, 0.5},
      {3.2, 1.0, -0.75}, {6.38, 2.09, 0.0},
  };
  for (const auto& pt : pts) {
    const long double want = oracle::lorentz_sum(pt.xi, pt.gamma, pt.delta);
    const double got = photon::lorentz_sum(pt.xi, pt.gamma, pt.delta);
    INFO("xi = ", pt.xi, ", gamma = ", pt.gamma, ", delta = ", pt.delta);
    CHECK(oracle::rel_err(got, want) < 1e-13);
  }
}

TEST_CASE("lorentz_sum frozen values") {
  // Reference values computed with the long-double direct sum and frozen.
  CHECK(photon::lorentz_sum(2.404825557695773, 0.5, 0.0) ==
        doctest::Approx(0.152094115869).epsilon(1e-11));
  CHECK(photon::lorentz_sum(1.14, 1.0 / 7.0, 0.5) ==
        doctest::Approx(0.737940256283).epsilon(1e-11));
}

TEST_CASE("lorentz_sum at xi = 0 collapses to the bare Lorentzian exactly") {
  for (const double g : {0.25, 0.7, 1.0, 3.0}) {
    CHECK(photon::lorentz_sum(0.0, g, 0.0) == 1.0 / (g * g));
  }
}

TEST_CASE("lorentz_sum divergent-term guard") {
  // gamma = 0 with integer detuning k hits an exact pole whenever J_k != 0.
  CHECK_THROWS_AS(photon::lorentz_sum(1.0, 0.0, 0.0), photon::DivergentTerm);
  CHECK_THROWS_AS(photon::lorentz_sum(1.0, 0.0, 1.0), photon::DivergentTerm);
  CHECK_THROWS_AS(photon::lorentz_sum(1.0, 0.0, -2.0), photon::DivergentTerm);
  // Off-integer detuning keeps every denominator positive.
  CHECK(photon::lorentz_sum(1.0, 0.0, 0.5) > 0.0);
  // Non-finite input is interface misuse.
  CHECK_THROWS_AS(photon::lorentz_sum(std::nan(""), 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("lorentz_sum_dxi matches the direct ladder sum") {
  struct Point {
    double xi, gamma;
  };
  const std::vector<Point> pts{{0.5, 0.3}, {1.0, 0.5},  {2.405, 0.5},
                               {3.27, 1.7}, {5.52, 2.0}, {8.0, 0.25}};
  for (const auto& pt : pts) {
    const long double want = oracle::lorentz_sum_dxi(pt.xi, pt.gamma);
    const double got = photon::lorentz_sum_dxi(pt.xi, pt.gamma);
    INFO("xi = ", pt.xi, ", gamma = ", pt.gamma);
    CHECK(oracle::rel_err(got, want) < 1e-12);
  }
  // Parity: S is even in xi, so its xi-derivative vanishes at 0.
  CHECK(photon::lorentz_sum_dxi(0.0, 0.8) == 0.0);
}

TEST_CASE("lorentz_partials: consistency and finite-difference cross-check") {
  const double xi = 2.9;
  const double g = 1.3;
  const photon::LorentzPartials lp = photon::lorentz_partials(xi, g);

  // s and s_x agree with their standalone implementations.
  CHECK(oracle::rel_err(lp.s, oracle::lorentz_sum(xi, g, 0.0)) < 1e-13);
  CHECK(oracle::rel_err(lp.s_x, oracle::lorentz_sum_dxi(xi, g)) < 1e-12);

  // Higher partials against central differences of the lower ones.  The
  // FD truncation error dominates, so tolerances are commensurate with h^2.
  const double h = 1e-5;
  auto sx = [](double x, double gg) { return photon::lorentz_sum_dxi(x, gg); };
  const double fd_xx = (sx(xi + h, g) - sx(xi - h, g)) / (2.0 * h);
  const double fd_xg = (sx(xi, g + h) - sx(xi, g - h)) / (2.0 * h);
  auto sxx = [](double x, double gg) {
    return photon::lorentz_partials(x, gg).s_xx;
  };
  const double fd_xxx = (sxx(xi + h, g) - sxx(xi - h, g)) / (2.0 * h);
  const double fd_xxg = (sxx(xi, g + h) - sxx(xi, g - h)) / (2.0 * h);

  CHECK(std::abs(lp.s_xx - fd_xx) < 1e-8 * std::max(1.0, std::abs(fd_xx)));
  CHECK(std::abs(lp.s_xg - fd_xg) < 1e-8 * std::max(1.0, std::abs(fd_xg)));
  CHECK(std::abs(lp.s_xxx - fd_xxx) < 1e-7 * std::max(1.0, std::abs(fd_xxx)));
  CHECK(std::abs(lp.s_xxg - fd_xxg) < 1e-7 * std::max(1.0, std::abs(fd_xxg)));

  CHECK_THROWS_AS(photon::lorentz_partials(1.0, 0.0), photon::DivergentTerm);
}
