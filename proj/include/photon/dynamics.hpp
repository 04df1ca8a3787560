#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "photon/bessel.hpp"
#include "photon/params.hpp"

namespace photon {

// Conditional (no-emission) wavefunction of the two-level molecule.
struct StateVector {
  std::complex<double> psi_g{0.0, 0.0};
  std::complex<double> psi_e{0.0, 0.0};

  // Survival probability: the squared norm, which only shrinks because the
  // non-Hermitian -i*gamma/2 term removes amplitude and never adds it.
  double survival() const { return std::norm(psi_g) + std::norm(psi_e); }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> survival;
};

// Right-hand side of the scaled non-Hermitian Schroedinger equation:
//   i dpsi_g/dt = v_g cos(t) psi_g + (rabi/2) psi_e
//   i dpsi_e/dt = (rabi/2) psi_g + (v_e cos(t) - i gamma/2 + detuning) psi_e
StateVector rhs_schrodinger(double t, const StateVector& s,
                            const ScaledParams& p);

// Integrate from the ground state (psi_g, psi_e) = (1, 0), sampling at the
// given times (must be sorted, non-negative).  tol is the relative tolerance
// of the adaptive integrator; the absolute tolerance is tol * 1e-3, keeping
// the default pair at (1e-9, 1e-12).
Trajectory evolve_at(const ScaledParams& p, std::span<const double> times,
                     double tol = 1e-9);

// Convenience wrapper: n_samples equally spaced times on [0, t_end].
Trajectory evolve(const ScaledParams& p, double t_end, double tol = 1e-9,
                  std::size_t n_samples = 2001);

// Which amplitude-variable substitution to integrate in.
// WeakDrive:   psi_g = c_g e^{-i v_g sin t},
//              psi_e = c_e e^{-i v_e sin t - gamma t/2}; requires detuning=0
//              and carries an e^{+gamma t/2} factor in the c_e equation, so
//              it overflows once gamma*t_end/2 exceeds ~600.
// StrongDrive: psi_e = c_e e^{-i v_e sin t - i delta t} with the decay kept
//              as an explicit -(gamma/2) c_e term; valid for any detuning.
// Auto picks StrongDrive whenever detuning != 0 or gamma*t_end/2 > 30.
enum class AmplitudeForm { Auto, WeakDrive, StrongDrive };

// Same contract as evolve(), but integrating the amplitude equations with
// the Bessel series truncated at truncation_order(xi, 1e-12), then
// transforming back to psi.  Exists to validate the series representation
// against the direct integration.
Trajectory evolve_amplitude_basis(const ScaledParams& p, double t_end,
                                  double tol = 1e-9,
                                  std::size_t n_samples = 2001,
                                  AmplitudeForm form = AmplitudeForm::Auto);

// Closed-form long-time wavefunction of the weak-drive analysis:
//   psi_g(t) = e^{-i v_g sin t - zeta t}
//   psi_e(t) = -i rabi e^{-i v_e sin t - zeta t}
//              * sum_k J_k (e^{ikt} - e^{-gamma t/2}) (gamma - 2ik)
//                / (gamma^2 + 4k^2)
// with zeta = (rabi^2/2) gamma S(xi, gamma, 0).  The e^{-gamma t/2} factor
// is kept inside the sum exactly as written so nothing ever exponentiates a
// positive rate.  Derived at zero detuning; a nonzero detuning or a drive
// outside the weak regime is recorded as a warning, not an error.
struct AnalyticSolution {
  ScaledParams params;
  double zeta = 0.0;
  BesselRow row;
  std::vector<std::string> warnings;

  StateVector operator()(double t) const;
};

AnalyticSolution analytic_solution(const ScaledParams& p);
StateVector analytic_wavefunction(const ScaledParams& p, double t);

struct WaitingTimeOptions {
  double tol = 1e-9;            // integrator relative tolerance
  double tail = 1e-8;           // survival level where the grid stops
  double grid_dt = 0.125;       // survival sampling step
  double richardson_tol = 1e-5; // Simpson step-halving agreement target
  double t_max = 2e5;           // give up (NoConvergence) beyond this time
};

// Survival probability on a uniform grid from t = 0 down to the tail cutoff,
// plus the fitted tail decay rate.  Shared by the quadrature and the
// inverse-CDF sampler so both see the identical monotone P0.
struct SurvivalTable {
  std::vector<double> times;
  std::vector<double> survival;
  double dt = 0.0;
  double t_cut = 0.0;     // last grid time (first sample at/below the cutoff)
  double p_cut = 0.0;     // survival at t_cut
  double tail_rate = 0.0; // lambda in P0 ~ e^{-lambda t} over the last decade
  double fit_residual_rms = 0.0;
  bool tail_fit_ok = false;
  std::vector<std::string> warnings;
};

SurvivalTable survival_table(const ScaledParams& p,
                             const WaitingTimeOptions& opt = {});

struct WaitingTimeResult {
  double tau = 0.0;
  double zeta_fit = 0.0;   // tail_rate / 2; comparable to AnalyticSolution::zeta
  double t_cut = 0.0;
  double fit_residual_rms = 0.0;
  bool tail_fit_ok = false;
  std::vector<std::string> warnings;
};

// <tau> = integral of P0 over [0, inf): composite Simpson over the survival
// grid (step halved until two refinements agree to richardson_tol) plus the
// exponential tail p_cut / tail_rate.  Throws DivergentWaitingTime when
// rabi = 0 or gamma = 0.
WaitingTimeResult mean_waiting_time(const ScaledParams& p,
                                    const WaitingTimeOptions& opt = {});
double mean_waiting_time_numeric(const ScaledParams& p, double tol = 1e-9);

// Inverse-CDF sampling of the first-emission waiting time: solve
// P0(tau) = 1 - u on the monotone survival grid (bisection + log-linear
// interpolation; exponential inversion below the grid).  Deterministic given
// the seed, bit-identical across platforms (uniforms are built from the top
// 53 bits of mt19937_64 directly).
std::vector<double> sample_waiting_times(const SurvivalTable& table,
                                         std::size_t n, std::uint64_t seed);
std::vector<double> sample_waiting_times(const ScaledParams& p, std::size_t n,
                                         std::uint64_t seed,
                                         const WaitingTimeOptions& opt = {});

// Exposed for tests: the single-draw inversion behind the sampler.
// u in [0, 1); u = 0 maps to tau = 0.
double invert_survival(const SurvivalTable& table, double u);

}  // namespace photon
