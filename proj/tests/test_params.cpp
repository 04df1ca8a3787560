#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "photon/errors.hpp"
#include "photon/params.hpp"

using photon::PhysicalParams;
using photon::Regime;
using photon::ScaledParams;

TEST_CASE("scale_to_rf_units divides every rate by omega_rf") {
  PhysicalParams p;
  p.omega_rf = 4.0;
  p.gamma = 1.0;
  p.rabi = 2.0;
  p.detuning = -3.0;
  p.v_g = 0.4;
  p.v_e = 5.0;
  const ScaledParams s = photon::scale_to_rf_units(p);
  CHECK(s.gamma == 0.25);
  CHECK(s.rabi == 0.5);
  CHECK(s.detuning == -0.75);
  CHECK(s.v_g == 0.1);
  CHECK(s.v_e == 1.25);
  CHECK(s.xi() == 1.25 - 0.1);
}

TEST_CASE("scale_to_rf_units rejects bad input") {
  PhysicalParams p;
  p.gamma = 1.0;
  p.rabi = 0.1;

  p.omega_rf = 0.0;
  CHECK_THROWS_AS(photon::scale_to_rf_units(p), photon::NonPositiveFrequency);
  p.omega_rf = -2.0;
  CHECK_THROWS_AS(photon::scale_to_rf_units(p), photon::NonPositiveFrequency);

  p.omega_rf = 1.0;
  p.gamma = -1.0;
  CHECK_THROWS_AS(photon::scale_to_rf_units(p), std::invalid_argument);
  p.gamma = 1.0;
  p.rabi = -0.5;
  CHECK_THROWS_AS(photon::scale_to_rf_units(p), std::invalid_argument);
  p.rabi = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(photon::scale_to_rf_units(p), std::invalid_argument);
}

TEST_CASE("from_xi picks the canonical v_g = 0 representative") {
  const ScaledParams s = ScaledParams::from_xi(1.14, 1.0 / 7.0, 0.457, 0.25);
  CHECK(s.v_g == 0.0);
  CHECK(s.v_e == 1.14);
  CHECK(s.xi() == 1.14);
  CHECK(s.gamma == 1.0 / 7.0);
  CHECK(s.rabi == 0.457);
  CHECK(s.detuning == 0.25);
}

TEST_CASE("classify_regime thresholds") {
  auto regime = [](double gamma, double rabi) {
    return photon::classify_regime(ScaledParams::from_xi(1.0, gamma, rabi));
  };

  // Weak drive: rabi <= 0.2 * min(gamma, 1), boundary inclusive.
  CHECK(regime(0.5, 0.1) == Regime::WeakDrive);
  CHECK(regime(0.5, 0.100000001) != Regime::WeakDrive);
  CHECK(regime(2.0, 0.2) == Regime::WeakDrive);  // min(gamma,1) caps at 1
  CHECK(regime(2.0, 0.21) == Regime::Outside);

  // Strong drive: gamma < rabi <= 0.5.
  CHECK(regime(1.0 / 7.0, 0.457) == Regime::StrongDrive);
  CHECK(regime(0.1, 0.5) == Regime::StrongDrive);
  CHECK(regime(0.1, 0.51) == Regime::Outside);
  CHECK(regime(0.1, 0.9) == Regime::Outside);

  // In-between drive is outside both closed-form regimes.
  CHECK(regime(0.5, 0.3) == Regime::Outside);
}

TEST_CASE("regime names") {
  CHECK(photon::to_string(Regime::WeakDrive) == "weak-drive");
  CHECK(photon::to_string(Regime::StrongDrive) == "strong-drive");
  CHECK(photon::to_string(Regime::Outside) == "outside");
}

TEST_CASE("validate rejects non-finite and negative-rate params") {
  ScaledParams s = ScaledParams::from_xi(1.0, 0.5, 0.1);
  CHECK_NOTHROW(photon::validate(s));

  s.gamma = -0.1;
  CHECK_THROWS_AS(photon::validate(s), std::invalid_argument);
  s.gamma = 0.5;
  s.rabi = -1.0;
  CHECK_THROWS_AS(photon::validate(s), std::invalid_argument);
  s.rabi = 0.1;
  s.v_e = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(photon::validate(s), std::invalid_argument);
  s.v_e = 0.0;
  s.detuning = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(photon::validate(s), std::invalid_argument);

  // gamma = 0 and rabi = 0 are valid parameter points (the waiting time
  // diverges there, but that is the quadrature's business, not validate's).
  s = ScaledParams::from_xi(1.0, 0.0, 0.0);
  CHECK_NOTHROW(photon::validate(s));
}
