#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "photon/errors.hpp"
#include "photon/params.hpp"
#include "photon/rg.hpp"

using photon::RatePrediction;
using photon::Regime;

namespace {

bool any_contains(const std::vector<std::string>& v, const char* needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("weak-drive rate against the direct-summation oracle") {
  struct Point {
    double xi, gamma, rabi, delta;
  };
  const std::vector<Point> pts{
      {1.0, 0.5, 0.1, 0.0},   {2.404825557695773, 0.5, 0.08, 0.0},
      {1.14, 1.0 / 7.0, 0.04, 0.5}, {5.52, 2.0, 0.3, 0.25},
      {0.0, 0.7, 0.05, 0.0},  {3.27, 1.7, 0.2, -0.4},
  };
  for (const auto& pt : pts) {
    const long double want = (long double)pt.gamma * pt.rabi * pt.rabi *
                             oracle::lorentz_sum(pt.xi, pt.gamma, pt.delta);
    const RatePrediction got =
        photon::mean_tau_rg_detuned(pt.xi, pt.gamma, pt.rabi, pt.delta);
    INFO("xi = ", pt.xi, ", gamma = ", pt.gamma, ", delta = ", pt.delta);
    CHECK(oracle::rel_err(got.inverse_tau, want) < 1e-12);
  }
}

TEST_CASE("detuned weak-drive rate: frozen reference value") {
  // Fig. 4's parameter point at weak drive; value frozen from the
  // long-double oracle.
  const RatePrediction r =
      photon::mean_tau_rg_detuned(1.14, 1.0 / 7.0, 0.04, 0.5);
  CHECK(r.inverse_tau == doctest::Approx(1.68672058579e-4).epsilon(1e-11));
}

TEST_CASE("resonant rate is the detuned rate at delta = 0, bit for bit") {
  for (const auto& [xi, g, om] :
       std::vector<std::array<double, 3>>{{1.0, 0.5, 0.1},
                                          {2.405, 1.5, 0.02},
                                          {5.52, 0.25, 0.04}}) {
    CHECK(photon::mean_tau_rg(xi, g, om).inverse_tau ==
          photon::mean_tau_rg_detuned(xi, g, om, 0.0).inverse_tau);
  }
}

TEST_CASE("decay constant is exactly half the resonant rate") {
  for (const auto& [xi, g, om] :
       std::vector<std::array<double, 3>>{{1.0, 0.5, 0.1},
                                          {3.1, 2.0, 0.3},
                                          {0.0, 0.7, 0.05}}) {
    const double zeta = photon::decay_constant(xi, g, om);
    const RatePrediction r = photon::mean_tau_rg(xi, g, om);
    CHECK(2.0 * zeta == r.inverse_tau);
    // ... so 1/(2 zeta) and the predicted <tau> coincide exactly.
    CHECK(1.0 / (2.0 * zeta) == r.tau());
  }
}

TEST_CASE("tau() semantics") {
  RatePrediction r;
  CHECK(r.tau() == std::numeric_limits<double>::infinity());
  r.inverse_tau = 0.25;
  CHECK(r.tau() == 4.0);
}

TEST_CASE("strong-drive rate collapses exactly at xi = 0") {
  // Only the k = 0 resonance survives at zero modulation, leaving the
  // textbook saturated Lorentzian.  The equality is exact, not approximate:
  // the vanishing Bessel factors contribute exact zeros.
  for (const auto& [g, om] : std::vector<std::array<double, 2>>{
           {0.1, 0.3}, {1.0 / 7.0, 0.457}, {0.4, 0.5}}) {
    const double on_res =
        photon::emission_rate_strong_drive(0.0, g, om, 0.0).inverse_tau;
    CHECK(on_res == (g * (om * om)) / (g * g + 2.0 * (om * om)));

    const double off_res =
        photon::emission_rate_strong_drive(0.0, g, om, 0.5).inverse_tau;
    CHECK(off_res == (g * (om * om)) / ((g * g + 2.0 * (om * om)) + 1.0));
  }
}

TEST_CASE("strong-drive rate reduces to the weak form as rabi -> 0") {
  // With the saturation term 2 rabi^2 J_k^2 negligible, the strong-drive
  // sum and the weak-drive sum describe the same Lorentzian comb.
  const double xi = 1.14, g = 1.0 / 7.0, om = 1e-4, delta = 0.3;
  const double strong =
      photon::emission_rate_strong_drive(xi, g, om, delta).inverse_tau;
  const double weak =
      photon::mean_tau_rg_detuned(xi, g, om, delta).inverse_tau;
  CHECK(std::abs(strong - weak) < 1e-6 * weak);
  // ... and saturation always reduces the rate below the weak form.
  const double strong_sat =
      photon::emission_rate_strong_drive(xi, g, 0.457 * g, delta).inverse_tau;
  const double weak_sat =
      photon::mean_tau_rg_detuned(xi, g, 0.457 * g, delta).inverse_tau;
  CHECK(strong_sat < weak_sat);
}

TEST_CASE("regime classification and validity warnings") {
  // Inside the weak-drive regime: clean prediction.
  const RatePrediction weak_ok = photon::mean_tau_rg(1.0, 0.5, 0.1);
  CHECK(weak_ok.regime == Regime::WeakDrive);
  CHECK(weak_ok.validity_warnings.empty());

  // Weak-drive formula outside its regime: flagged, not blocked.
  const RatePrediction weak_off = photon::mean_tau_rg(1.0, 0.5, 0.3);
  CHECK(weak_off.regime == Regime::Outside);
  CHECK(any_contains(weak_off.validity_warnings, "weak-drive"));
  CHECK(weak_off.inverse_tau > 0.0);

  // Strong-drive formula in its regime: clean.
  const RatePrediction strong_ok =
      photon::emission_rate_strong_drive(1.14, 1.0 / 7.0, 0.457, 0.0);
  CHECK(strong_ok.regime == Regime::StrongDrive);
  CHECK(strong_ok.validity_warnings.empty());

  // Strong-drive formula at weak drive: regime warning.
  const RatePrediction strong_off =
      photon::emission_rate_strong_drive(1.0, 0.5, 0.1, 0.0);
  CHECK(any_contains(strong_off.validity_warnings, "strong-drive"));

  // Broad linewidth: the isolated-resonance picture itself degrades.
  const RatePrediction overlap =
      photon::emission_rate_strong_drive(1.0, 0.8, 0.3, 0.0);
  CHECK(any_contains(overlap.validity_warnings, "overlap"));
}

TEST_CASE("rate input checking and divergence") {
  CHECK_THROWS_AS(photon::mean_tau_rg(1.0, -0.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(photon::mean_tau_rg(1.0, 0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(photon::mean_tau_rg(std::nan(""), 0.5, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(photon::emission_rate_strong_drive(1.0, 0.5, 0.1,
                                                     std::nan("")),
                  std::invalid_argument);
  // gamma = 0 makes the resonant sum itself divergent.
  CHECK_THROWS_AS(photon::mean_tau_rg(1.0, 0.0, 0.1), photon::DivergentTerm);
  CHECK_THROWS_AS(photon::decay_constant(1.0, 0.0, 0.1),
                  photon::DivergentTerm);
}
