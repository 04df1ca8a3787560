#pragma once

#include <limits>
#include <string>
#include <vector>

#include "photon/params.hpp"

namespace photon {

// A closed-form emission-rate prediction.  inverse_tau is the rate in units
// of the rf frequency; warnings record when the formula is being used
// outside its derivation regime (they never block the computation).
struct RatePrediction {
  double inverse_tau = 0.0;
  Regime regime = Regime::Outside;
  std::vector<std::string> validity_warnings;

  double tau() const {
    return inverse_tau > 0.0 ? 1.0 / inverse_tau
                             : std::numeric_limits<double>::infinity();
  }
};

// Effective decay rate zeta of the renormalized weak-drive amplitudes:
// zeta = (rabi^2 / 2) gamma S(xi, gamma, 0).  The mean waiting time of the
// weak-drive closed form is exactly 1/(2 zeta).
double decay_constant(double xi, double gamma, double rabi);

// Weak drive, resonant laser:
//   1/<tau> = gamma rabi^2 sum_k J_k^2 / (gamma^2 + 4 k^2).
// Implemented as the delta = 0 case of mean_tau_rg_detuned so the two are
// bit-identical by construction.  DivergentTerm propagates from the sum when
// gamma = 0.
RatePrediction mean_tau_rg(double xi, double gamma, double rabi);

// Weak drive, detuned laser:
//   1/<tau> = gamma rabi^2 sum_k J_k^2 / (gamma^2 + 4 (k - delta)^2).
RatePrediction mean_tau_rg_detuned(double xi, double gamma, double rabi,
                                   double delta);

// Strong drive (gamma < rabi << 1), with saturation broadening:
//   1/<tau>(delta) = sum_k gamma rabi^2 J_k^2
//                    / (gamma^2 + 2 rabi^2 J_k^2 + 4 (k - delta)^2).
// Only valid while resonances do not overlap; a warning is attached when
// gamma or max_k rabi*|J_k| exceeds 0.5.
RatePrediction emission_rate_strong_drive(double xi, double gamma, double rabi,
                                          double delta);

}  // namespace photon
