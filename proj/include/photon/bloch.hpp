#pragma once

#include <complex>
#include <span>
#include <vector>

#include "photon/params.hpp"

namespace photon {

// Two-level density matrix in the rotating frame of the laser; rho_gg and
// rho_ge are implied by trace 1 and Hermiticity.
struct DensityMatrix {
  double rho_ee = 0.0;
  std::complex<double> rho_eg{0.0, 0.0};
};

// Standard spontaneous-emission optical Bloch equations with the rf drive
// folded into an instantaneous detuning Delta(t) = detuning + xi cos(t):
//   d rho_ee / dt = -gamma rho_ee + rabi Im(rho_eg)
//   d rho_eg / dt = -(gamma/2 + i Delta(t)) rho_eg + (i rabi/2)(1 - 2 rho_ee)
// The sign of the rabi Im(rho_eg) feeding term is fixed by two anchors it
// must satisfy: the stationary population (Omega^2/4)/(delta^2 + Gamma^2/4
// + Omega^2/2) at xi = 0, and gamma * rho_ee^ss = gamma Omega^2 / (Gamma^2 +
// 2 Omega^2) at zero detuning (the k = 0 saturated-rate identity).
DensityMatrix bloch_rhs(double t, const DensityMatrix& rho,
                        const ScaledParams& p);

// Closed-form stationary excited population at xi = 0 (constant detuning).
double steady_state_population(double gamma, double rabi, double delta);

// Adaptive integration of the Bloch equations from rho0 over [t0, t1].
DensityMatrix integrate_bloch(const ScaledParams& p, const DensityMatrix& rho0,
                              double t0, double t1, double tol = 1e-10);

// Drive the system to its periodic steady state and return the rf-period
// average of rho_ee (Simpson, 256 samples per period).  Convergence is
// declared when successive period averages differ by less than tol; throws
// NoConvergence after 10^4 periods.
double period_averaged_population(const ScaledParams& p, double tol = 1e-8);

// Emission rate gamma * <rho_ee> for each detuning in delta_grid (xi and the
// other parameters held fixed from p).  Points are independent, so they are
// dispatched to `jobs` workers (0 = available parallelism).
std::vector<double> emission_spectrum_bloch(const ScaledParams& p,
                                            std::span<const double> delta_grid,
                                            double tol = 1e-8, int jobs = 1);

}  // namespace photon
