#pragma once

#include <string>

namespace photon {

// System parameters in physical (angular) units, rad/s.  Only the ratios to
// omega_rf ever enter a computation; this record exists so unit conversion
// happens exactly once, at the input boundary.
struct PhysicalParams {
  double omega_rf = 0.0;  // rf drive angular frequency
  double gamma = 0.0;     // radiative decay rate of |e>
  double rabi = 0.0;      // laser-molecule coupling Omega
  double detuning = 0.0;  // laser detuning delta
  double v_g = 0.0;       // rf coupling of |g> (mu_g . E_rf)
  double v_e = 0.0;       // rf coupling of |e> (mu_e . E_rf)
};

// The universal input record: everything in units of the rf frequency, with
// time measured in rf phase (one drive period = 2*pi).  The modulation index
// xi = v_e - v_g is derived, never stored, so it can't drift out of sync.
struct ScaledParams {
  double gamma = 0.0;
  double rabi = 0.0;
  double detuning = 0.0;
  double v_g = 0.0;
  double v_e = 0.0;

  double xi() const { return v_e - v_g; }

  // Most analysis only cares about xi, not the v_g/v_e split; this picks the
  // canonical representative v_g = 0, v_e = xi.
  static ScaledParams from_xi(double xi, double gamma, double rabi,
                              double detuning = 0.0) {
    ScaledParams p;
    p.gamma = gamma;
    p.rabi = rabi;
    p.detuning = detuning;
    p.v_g = 0.0;
    p.v_e = xi;
    return p;
  }
};

// Coarse drive-strength classification.  It only ever drives warnings about
// which closed-form prediction can be trusted; no computation is blocked by
// it.
enum class Regime {
  WeakDrive,    // rabi <= kWeakDriveRatio * min(gamma, 1)
  StrongDrive,  // gamma < rabi <= kStrongDriveCap
  Outside,      // anything else
};

// Declared thresholds (tunables, not derived): the weak-drive formulas are
// exercised at rabi/gamma = 0.2 and the strong-drive ones up to rabi = 0.457,
// so both regimes bracket their use cases with margin.
inline constexpr double kWeakDriveRatio = 0.2;
inline constexpr double kStrongDriveCap = 0.5;

// Divide every rate by omega_rf.  Throws NonPositiveFrequency if
// p.omega_rf <= 0; throws std::invalid_argument on negative gamma/rabi or
// non-finite fields.
ScaledParams scale_to_rf_units(const PhysicalParams& p);

Regime classify_regime(const ScaledParams& s);

std::string to_string(Regime r);

// Throws std::invalid_argument unless all fields are finite and
// gamma >= 0, rabi >= 0.  Used at API boundaries.
void validate(const ScaledParams& s);

}  // namespace photon
