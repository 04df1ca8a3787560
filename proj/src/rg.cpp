#include "photon/rg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "photon/bessel.hpp"
#include "photon/errors.hpp"

namespace photon {

namespace {

void check_rate_inputs(double xi, double gamma, double rabi, double delta) {
  if (!std::isfinite(xi) || !std::isfinite(gamma) || !std::isfinite(rabi) ||
      !std::isfinite(delta))
    throw std::invalid_argument("rate prediction: arguments must be finite");
  if (gamma < 0.0 || rabi < 0.0)
    throw std::invalid_argument("rate prediction: gamma and rabi must be >= 0");
}

}  // namespace

double decay_constant(double xi, double gamma, double rabi) {
  check_rate_inputs(xi, gamma, rabi, 0.0);
  // Half the emission rate: <tau> = 1/(2 zeta) inverts the rate exactly.
  return 0.5 * (gamma * (rabi * rabi) * lorentz_sum(xi, gamma, 0.0));
}

RatePrediction mean_tau_rg_detuned(double xi, double gamma, double rabi,
                                   double delta) {
  check_rate_inputs(xi, gamma, rabi, delta);
  RatePrediction out;
  out.inverse_tau = gamma * (rabi * rabi) * lorentz_sum(xi, gamma, delta);
  out.regime = classify_regime(ScaledParams::from_xi(xi, gamma, rabi, delta));
  if (out.regime != Regime::WeakDrive)
    out.validity_warnings.push_back(
        "weak-drive rate evaluated outside the weak-drive regime (" +
        to_string(out.regime) + ")");
  return out;
}

RatePrediction mean_tau_rg(double xi, double gamma, double rabi) {
  // The resonant rate is the detuned rate at delta = 0, by definition and by
  // identical arithmetic.
  return mean_tau_rg_detuned(xi, gamma, rabi, 0.0);
}

RatePrediction emission_rate_strong_drive(double xi, double gamma, double rabi,
                                          double delta) {
  check_rate_inputs(xi, gamma, rabi, delta);
  const int order = truncation_order(xi, 1e-12);
  const BesselRow row = bessel_row(xi, order);

  const double om2 = rabi * rabi;
  double total = 0.0;
  double max_split = 0.0;  // largest per-resonance saturation width
  for (int k = -order; k <= order; ++k) {
    const double jk = row[k];
    const double jk2 = jk * jk;
    const double dk = static_cast<double>(k) - delta;
    const double num = gamma * om2 * jk2;
    const double den = gamma * gamma + (2.0 * om2) * jk2 + 4.0 * (dk * dk);
    total += num / den;
    max_split = std::max(max_split, rabi * std::abs(jk));
  }

  RatePrediction out;
  out.inverse_tau = total;
  out.regime = classify_regime(ScaledParams::from_xi(xi, gamma, rabi, delta));
  if (out.regime != Regime::StrongDrive)
    out.validity_warnings.push_back(
        "strong-drive rate evaluated outside the strong-drive regime (" +
        to_string(out.regime) + ")");
  if (gamma > 0.5 || max_split > 0.5)
    out.validity_warnings.push_back(
        "resonances overlap (width comparable to their unit spacing); the "
        "isolated-resonance sum is unreliable here");
  return out;
}

}  // namespace photon
