#include "photon/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "photon/errors.hpp"

namespace photon {

namespace {

bool all_finite(const ScaledParams& s) {
  return std::isfinite(s.gamma) && std::isfinite(s.rabi) &&
         std::isfinite(s.detuning) && std::isfinite(s.v_g) &&
         std::isfinite(s.v_e);
}

}  // namespace

void validate(const ScaledParams& s) {
  if (!all_finite(s))
    throw std::invalid_argument("ScaledParams: all fields must be finite");
  if (s.gamma < 0.0)
    throw std::invalid_argument("ScaledParams: gamma must be >= 0");
  if (s.rabi < 0.0)
    throw std::invalid_argument("ScaledParams: rabi must be >= 0");
}

ScaledParams scale_to_rf_units(const PhysicalParams& p) {
  if (!std::isfinite(p.omega_rf) || p.omega_rf <= 0.0)
    throw NonPositiveFrequency(
        "scale_to_rf_units: omega_rf must be positive and finite");
  ScaledParams s;
  s.gamma = p.gamma / p.omega_rf;
  s.rabi = p.rabi / p.omega_rf;
  s.detuning = p.detuning / p.omega_rf;
  s.v_g = p.v_g / p.omega_rf;
  s.v_e = p.v_e / p.omega_rf;
  validate(s);
  return s;
}

Regime classify_regime(const ScaledParams& s) {
  if (s.rabi <= kWeakDriveRatio * std::min(s.gamma, 1.0))
    return Regime::WeakDrive;
  if (s.gamma < s.rabi && s.rabi <= kStrongDriveCap)
    return Regime::StrongDrive;
  return Regime::Outside;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::WeakDrive:
      return "weak-drive";
    case Regime::StrongDrive:
      return "strong-drive";
    case Regime::Outside:
      break;
  }
  return "outside";
}

}  // namespace photon
