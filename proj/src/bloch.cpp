#include "photon/bloch.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "photon/errors.hpp"
#include "photon/ode.hpp"
#include "photon/parallel.hpp"

namespace photon {

DensityMatrix bloch_rhs(double t, const DensityMatrix& rho,
                        const ScaledParams& p) {
  const double delta_t = p.detuning + p.xi() * std::cos(t);
  DensityMatrix d;
  d.rho_ee = -p.gamma * rho.rho_ee + p.rabi * rho.rho_eg.imag();
  d.rho_eg = -(0.5 * p.gamma + std::complex<double>(0.0, delta_t)) *
                 rho.rho_eg +
             std::complex<double>(0.0, 0.5 * p.rabi) *
                 (1.0 - 2.0 * rho.rho_ee);
  return d;
}

double steady_state_population(double gamma, double rabi, double delta) {
  const double den =
      delta * delta + gamma * gamma * 0.25 + rabi * rabi * 0.5;
  if (!(den > 0.0))
    throw std::invalid_argument(
        "steady_state_population: gamma, rabi and delta cannot all vanish");
  return (rabi * rabi * 0.25) / den;
}

namespace {

// The integrator state: {rho_ee, Re rho_eg, Im rho_eg}.  rho_gg and rho_ge
// are reconstructed from trace and Hermiticity, so three reals suffice.
using State3 = std::array<double, 3>;

State3 pack(const DensityMatrix& rho) {
  return {rho.rho_ee, rho.rho_eg.real(), rho.rho_eg.imag()};
}

DensityMatrix unpack(const State3& y) {
  return {y[0], {y[1], y[2]}};
}

// Adapter so the single public rhs stays the one source of truth.
struct BlochRhs {
  ScaledParams p;
  void operator()(double t, const State3& y, State3& dy) const {
    const DensityMatrix d = bloch_rhs(t, unpack(y), p);
    dy[0] = d.rho_ee;
    dy[1] = d.rho_eg.real();
    dy[2] = d.rho_eg.imag();
  }
};

}  // namespace

DensityMatrix integrate_bloch(const ScaledParams& p, const DensityMatrix& rho0,
                              double t0, double t1, double tol) {
  validate(p);
  if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0)
    throw std::invalid_argument("integrate_bloch: bad time interval");
  if (!(tol > 0.0))
    throw std::invalid_argument("integrate_bloch: tol must be > 0");

  StepControl ctrl;
  ctrl.rtol = tol;
  ctrl.atol = tol * 1e-3;
  Dopri5<3, BlochRhs> stepper(BlochRhs{p}, t0, pack(rho0), ctrl);
  while (stepper.t() < t1) stepper.step(t1);
  return unpack(stepper.y());
}

double period_averaged_population(const ScaledParams& p, double tol) {
  validate(p);
  if (!(tol > 0.0))
    throw std::invalid_argument(
        "period_averaged_population: tol must be > 0");

  constexpr double period = 2.0 * std::numbers::pi;
  constexpr int samples = 256;  // per period; 257 Simpson nodes

  StepControl ctrl;
  ctrl.rtol = std::min(1e-10, 0.01 * tol);
  ctrl.atol = ctrl.rtol * 1e-3;
  Dopri5<3, BlochRhs> stepper(BlochRhs{p}, 0.0, State3{0.0, 0.0, 0.0}, ctrl);

  double prev = std::numeric_limits<double>::quiet_NaN();
  double t0 = 0.0;
  for (int n = 0; n < 10000; ++n) {
    // t1 and the j = samples node are written as the same expression so the
    // final dense sample lands exactly on the clipped step end.
    const double t1 = t0 + period;
    std::array<double, samples + 1> vals{};
    vals[0] = stepper.y()[0];
    int j = 1;
    while (j <= samples) {
      stepper.step(t1);
      while (j <= samples) {
        const double tj = t0 + period * (static_cast<double>(j) / samples);
        if (tj > stepper.t()) break;
        vals[j] = stepper.dense(tj)[0];
        ++j;
      }
    }

    double integral = vals[0] + vals[samples];
    for (int k = 1; k < samples; k += 2) integral += 4.0 * vals[k];
    for (int k = 2; k < samples; k += 2) integral += 2.0 * vals[k];
    integral *= (period / samples) / 3.0;
    const double avg = integral / period;

    if (!std::isnan(prev) && std::abs(avg - prev) < tol) return avg;
    prev = avg;
    t0 = t1;
  }
  throw NoConvergence(
      "period-averaged population did not settle within 10^4 rf periods");
}

std::vector<double> emission_spectrum_bloch(const ScaledParams& p,
                                            std::span<const double> delta_grid,
                                            double tol, int jobs) {
  validate(p);
  std::vector<double> out(delta_grid.size());
  parallel_for(delta_grid.size(), jobs, [&](std::size_t i) {
    ScaledParams q = p;
    q.detuning = delta_grid[i];
    out[i] = p.gamma * period_averaged_population(q, tol);
  });
  return out;
}

}  // namespace photon
