#include "photon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "photon/errors.hpp"
#include "photon/ode.hpp"
#include "photon/rg.hpp"

namespace photon {

namespace {

using cplx = std::complex<double>;
using State4 = std::array<double, 4>;

// The integrator works on flat real arrays; amplitudes are interleaved as
// (Re psi_g, Im psi_g, Re psi_e, Im psi_e).
StateVector unpack(const State4& y) {
  return StateVector{cplx(y[0], y[1]), cplx(y[2], y[3])};
}

StepControl make_control(double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("integrator tolerance must be > 0");
  StepControl ctrl;
  ctrl.rtol = tol;
  ctrl.atol = tol * 1e-3;
  return ctrl;
}

void check_sample_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0)
      throw std::invalid_argument("sample times must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1])
      throw std::invalid_argument("sample times must be sorted ascending");
  }
}

std::vector<double> linspace(double t_end, std::size_t n_samples) {
  if (!(t_end > 0.0))
    throw std::invalid_argument("t_end must be > 0");
  if (n_samples < 2)
    throw std::invalid_argument("need at least 2 sample times");
  std::vector<double> ts(n_samples);
  const double step = t_end / static_cast<double>(n_samples - 1);
  for (std::size_t i = 0; i < n_samples; ++i)
    ts[i] = static_cast<double>(i) * step;
  ts.back() = t_end;
  return ts;
}

// W(t) = sum_k J_k(xi) e^{ikt}, the Fourier expansion of e^{i xi sin t},
// truncated at the row's order.  z-power iteration instead of per-term
// trig: one sin/cos per call no matter the order.
cplx modulation_series(const BesselRow& row, double t) {
  const cplx z(std::cos(t), std::sin(t));
  cplx zk(1.0, 0.0);
  cplx w(row.values[0], 0.0);
  for (int k = 1; k <= row.order; ++k) {
    zk *= z;
    // J_k z^k + J_{-k} z^{-k} with J_{-k} = (-1)^k J_k and z^{-k} = conj(z^k)
    const cplx pair = (k & 1) ? zk - std::conj(zk) : zk + std::conj(zk);
    w += row.values[k] * pair;
  }
  return w;
}

}  // namespace

StateVector rhs_schrodinger(double t, const StateVector& s,
                            const ScaledParams& p) {
  const cplx minus_i(0.0, -1.0);
  const double drive = std::cos(t);
  StateVector d;
  d.psi_g = minus_i * (p.v_g * drive * s.psi_g + 0.5 * p.rabi * s.psi_e);
  d.psi_e = minus_i * (0.5 * p.rabi * s.psi_g +
                       (p.v_e * drive + p.detuning) * s.psi_e) -
            0.5 * p.gamma * s.psi_e;
  return d;
}

Trajectory evolve_at(const ScaledParams& p, std::span<const double> times,
                     double tol) {
  validate(p);
  check_sample_times(times);
  const StepControl ctrl = make_control(tol);

  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.resize(times.size());
  traj.survival.resize(times.size());
  if (times.empty()) return traj;

  auto rhs = [&p](double t, const State4& y, State4& dy) {
    const StateVector d = rhs_schrodinger(t, unpack(y), p);
    dy = {d.psi_g.real(), d.psi_g.imag(), d.psi_e.real(), d.psi_e.imag()};
  };
  const State4 y0{1.0, 0.0, 0.0, 0.0};
  integrate_sampled<4>(rhs, 0.0, y0, times, ctrl,
                       [&](std::size_t i, double, const State4& y) {
                         traj.states[i] = unpack(y);
                         traj.survival[i] = traj.states[i].survival();
                         return true;
                       });
  return traj;
}

Trajectory evolve(const ScaledParams& p, double t_end, double tol,
                  std::size_t n_samples) {
  const std::vector<double> ts = linspace(t_end, n_samples);
  return evolve_at(p, ts, tol);
}

Trajectory evolve_amplitude_basis(const ScaledParams& p, double t_end,
                                  double tol, std::size_t n_samples,
                                  AmplitudeForm form) {
  validate(p);
  const std::vector<double> ts = linspace(t_end, n_samples);
  const StepControl ctrl = make_control(tol);

  if (form == AmplitudeForm::Auto) {
    form = (p.detuning != 0.0 || 0.5 * p.gamma * t_end > 30.0)
               ? AmplitudeForm::StrongDrive
               : AmplitudeForm::WeakDrive;
  }
  if (form == AmplitudeForm::WeakDrive) {
    if (p.detuning != 0.0)
      throw std::invalid_argument(
          "weak-drive amplitude form requires zero detuning");
    if (0.5 * p.gamma * t_end > 600.0)
      throw std::invalid_argument(
          "weak-drive amplitude form overflows: gamma * t_end / 2 > 600");
  }

  const BesselRow row = bessel_row(p.xi(), truncation_order(p.xi(), 1e-12));

  Trajectory traj;
  traj.times = ts;
  traj.states.resize(ts.size());
  traj.survival.resize(ts.size());
  const State4 y0{1.0, 0.0, 0.0, 0.0};  // c_g = 1, c_e = 0

  if (form == AmplitudeForm::WeakDrive) {
    auto rhs = [&p, &row](double t, const State4& y, State4& dy) {
      const cplx cg(y[0], y[1]), ce(y[2], y[3]);
      const cplx w = modulation_series(row, t);
      const cplx coupling(0.0, -0.5 * p.rabi);
      const cplx dcg =
          coupling * std::conj(w) * std::exp(-0.5 * p.gamma * t) * ce;
      const cplx dce = coupling * w * std::exp(0.5 * p.gamma * t) * cg;
      dy = {dcg.real(), dcg.imag(), dce.real(), dce.imag()};
    };
    integrate_sampled<4>(rhs, 0.0, y0, ts, ctrl,
                         [&](std::size_t i, double t, const State4& y) {
                           const cplx cg(y[0], y[1]), ce(y[2], y[3]);
                           const double s = std::sin(t);
                           StateVector sv;
                           sv.psi_g = cg * std::polar(1.0, -p.v_g * s);
                           sv.psi_e = ce * std::polar(1.0, -p.v_e * s) *
                                      std::exp(-0.5 * p.gamma * t);
                           traj.states[i] = sv;
                           traj.survival[i] = sv.survival();
                           return true;
                         });
  } else {
    auto rhs = [&p, &row](double t, const State4& y, State4& dy) {
      const cplx cg(y[0], y[1]), ce(y[2], y[3]);
      const cplx w = modulation_series(row, t);
      const cplx coupling(0.0, -0.5 * p.rabi);
      const cplx rot = std::polar(1.0, p.detuning * t);  // e^{+i delta t}
      const cplx dcg = coupling * std::conj(w * rot) * ce;
      const cplx dce = coupling * w * rot * cg - 0.5 * p.gamma * ce;
      dy = {dcg.real(), dcg.imag(), dce.real(), dce.imag()};
    };
    integrate_sampled<4>(rhs, 0.0, y0, ts, ctrl,
                         [&](std::size_t i, double t, const State4& y) {
                           const cplx cg(y[0], y[1]), ce(y[2], y[3]);
                           const double s = std::sin(t);
                           StateVector sv;
                           sv.psi_g = cg * std::polar(1.0, -p.v_g * s);
                           sv.psi_e = ce * std::polar(
                                               1.0,
                                               -(p.v_e * s + p.detuning * t));
                           traj.states[i] = sv;
                           traj.survival[i] = sv.survival();
                           return true;
                         });
  }
  return traj;
}

StateVector AnalyticSolution::operator()(double t) const {
  const double g = params.gamma;
  const double sin_t = std::sin(t);
  const double envelope = std::exp(-zeta * t);
  const double short_decay = std::exp(-0.5 * g * t);

  // sum_k J_k (e^{ikt} - e^{-gamma t/2}) (gamma - 2ik) / (gamma^2 + 4k^2);
  // the short-time factor stays inside the sum so every exponent is <= 0.
  cplx sum(0.0, 0.0);
  for (int k = -row.order; k <= row.order; ++k) {
    const double jk = row[k];
    if (jk == 0.0) continue;
    const cplx phase = std::polar(1.0, static_cast<double>(k) * t);
    sum += jk * (phase - short_decay) * cplx(g, -2.0 * k) /
           (g * g + 4.0 * static_cast<double>(k) * k);
  }

  StateVector out;
  out.psi_g = std::polar(envelope, -params.v_g * sin_t);
  out.psi_e = cplx(0.0, -params.rabi) *
              std::polar(envelope, -params.v_e * sin_t) * sum;
  return out;
}

AnalyticSolution analytic_solution(const ScaledParams& p) {
  validate(p);
  AnalyticSolution sol;
  sol.params = p;
  sol.zeta = decay_constant(p.xi(), p.gamma, p.rabi);
  sol.row = bessel_row(p.xi(), truncation_order(p.xi(), 1e-12));
  if (classify_regime(p) != Regime::WeakDrive)
    sol.warnings.push_back(
        "weak-drive closed form evaluated outside the weak-drive regime");
  if (p.detuning != 0.0)
    sol.warnings.push_back(
        "closed form derived at zero detuning; the detuning is ignored");
  return sol;
}

StateVector analytic_wavefunction(const ScaledParams& p, double t) {
  return analytic_solution(p)(t);
}

namespace {

// Log-survival at an arbitrary time by linear interpolation of ln P0 on the
// uniform grid (exact at the nodes, exponential in between -- the natural
// model for a decaying survival).
double log_survival_at(const SurvivalTable& tab, double t) {
  const std::size_t last = tab.times.size() - 1;
  double pos = t / tab.dt;
  if (pos <= 0.0) return std::log(std::max(tab.survival.front(), 1e-300));
  std::size_t i = static_cast<std::size_t>(pos);
  if (i >= last) i = last - 1;
  const double f = pos - static_cast<double>(i);
  const double lp0 = std::log(std::max(tab.survival[i], 1e-300));
  const double lp1 = std::log(std::max(tab.survival[i + 1], 1e-300));
  return (1.0 - f) * lp0 + f * lp1;
}

// Fit the asymptotic decay rate lambda over the last decade of survival,
// sampling stroboscopically at rf-period spacing so the periodic modulation
// of P0 drops out of the fit.
void fit_tail(SurvivalTable& tab, const ScaledParams& p,
              const WaitingTimeOptions& opt) {
  const double period = 2.0 * std::numbers::pi;
  const double log_hi = std::log(10.0 * opt.tail);

  std::vector<double> ts, ys;
  for (int m = 0;; ++m) {
    const double tm = tab.t_cut - period * static_cast<double>(m);
    if (tm < 0.0) break;
    const double lp = log_survival_at(tab, tm);
    if (lp > log_hi) break;  // left the last decade
    ts.push_back(tm);
    ys.push_back(lp);
  }

  if (ts.size() >= 3) {
    const double n = static_cast<double>(ts.size());
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      mt += ts[i];
      my += ys[i];
    }
    mt /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      sxx += (ts[i] - mt) * (ts[i] - mt);
      sxy += (ts[i] - mt) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double r = ys[i] - (my + slope * (ts[i] - mt));
      ss_res += r * r;
    }
    const double lambda = -slope;
    if (lambda > 0.0) {
      tab.tail_rate = lambda;
      tab.fit_residual_rms = std::sqrt(ss_res / n);
      tab.tail_fit_ok = true;
      if (tab.fit_residual_rms >= 1e-3)
        tab.warnings.push_back(
            "tail fit residual rms exceeds 1e-3; the asymptotic decay may "
            "not be clean yet");
      return;
    }
  }

  // Not enough of a tail to fit (very fast decay) or a non-decaying fit:
  // fall back on the closed-form rate, flagged.
  tab.tail_rate =
      mean_tau_rg_detuned(p.xi(), p.gamma, p.rabi, p.detuning).inverse_tau;
  tab.tail_fit_ok = false;
  tab.fit_residual_rms = 0.0;
  tab.warnings.push_back(
      "tail fit unavailable (fewer than 3 stroboscopic points in the last "
      "decade); using the closed-form decay rate for the tail");
}

}  // namespace

SurvivalTable survival_table(const ScaledParams& p,
                             const WaitingTimeOptions& opt) {
  validate(p);
  if (p.rabi == 0.0 || p.gamma == 0.0)
    throw DivergentWaitingTime(
        "survival never decays: both rabi and gamma must be > 0");
  if (!(opt.grid_dt > 0.0) || !(opt.tail > 0.0) || !(opt.tail < 1.0) ||
      !(opt.t_max > 0.0))
    throw std::invalid_argument("survival_table: malformed options");

  SurvivalTable tab;
  tab.dt = opt.grid_dt;
  tab.times.push_back(0.0);
  tab.survival.push_back(1.0);

  auto rhs = [&p](double t, const State4& y, State4& dy) {
    const StateVector d = rhs_schrodinger(t, unpack(y), p);
    dy = {d.psi_g.real(), d.psi_g.imag(), d.psi_e.real(), d.psi_e.imag()};
  };
  const State4 y0{1.0, 0.0, 0.0, 0.0};
  Dopri5<4, decltype(rhs)> stepper(rhs, 0.0, y0, make_control(opt.tol));

  std::size_t next = 1;
  bool reached_tail = false;
  while (!reached_tail) {
    if (stepper.t() >= opt.t_max)
      throw NoConvergence(
          "survival did not reach the tail cutoff before t_max");
    stepper.step(opt.t_max);
    double next_t = opt.grid_dt * static_cast<double>(next);
    while (next_t <= stepper.t()) {
      const State4 yi = stepper.dense(next_t);
      const double s =
          yi[0] * yi[0] + yi[1] * yi[1] + yi[2] * yi[2] + yi[3] * yi[3];
      tab.times.push_back(next_t);
      tab.survival.push_back(s);
      ++next;
      next_t = opt.grid_dt * static_cast<double>(next);
      if (s < opt.tail) {
        reached_tail = true;
        break;
      }
    }
  }

  tab.t_cut = tab.times.back();
  tab.p_cut = tab.survival.back();
  fit_tail(tab, p, opt);
  return tab;
}

namespace {

// Composite Simpson over every `stride`-th grid point, with a trapezoid on
// the final leftover interval when the coarse interval count is odd.
double simpson_uniform(const std::vector<double>& v, double dt, int stride) {
  const std::size_t n = v.size();
  if (n < 2) return 0.0;
  const std::size_t m = (n - 1) / static_cast<std::size_t>(stride);
  if (m == 0) return 0.0;
  const double h = dt * stride;
  const std::size_t pairs = m / 2;
  double total = 0.0;
  for (std::size_t j = 0; j < pairs; ++j) {
    const std::size_t i0 = 2 * j * static_cast<std::size_t>(stride);
    total += (h / 3.0) * (v[i0] + 4.0 * v[i0 + stride] + v[i0 + 2 * stride]);
  }
  if (m % 2 == 1) {
    const std::size_t i0 = 2 * pairs * static_cast<std::size_t>(stride);
    total += 0.5 * h * (v[i0] + v[i0 + stride]);
  }
  return total;
}

}  // namespace

WaitingTimeResult mean_waiting_time(const ScaledParams& p,
                                    const WaitingTimeOptions& opt) {
  validate(p);
  if (p.rabi == 0.0 || p.gamma == 0.0)
    throw DivergentWaitingTime(
        "mean waiting time diverges: both rabi and gamma must be > 0");

  WaitingTimeOptions cur = opt;
  SurvivalTable tab;
  double integral = 0.0;
  bool agreed = false;
  for (int attempt = 0;; ++attempt) {
    tab = survival_table(p, cur);
    const double fine = simpson_uniform(tab.survival, tab.dt, 1);
    const double coarse = simpson_uniform(tab.survival, tab.dt, 2);
    integral = fine;
    const double rel =
        std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
    if (rel < cur.richardson_tol) {
      agreed = true;
      break;
    }
    if (attempt == 3) break;  // three step halvings, then give up gracefully
    cur.grid_dt *= 0.5;
  }

  WaitingTimeResult result;
  result.tau = integral + tab.p_cut / tab.tail_rate;
  result.zeta_fit = 0.5 * tab.tail_rate;
  result.t_cut = tab.t_cut;
  result.fit_residual_rms = tab.fit_residual_rms;
  result.tail_fit_ok = tab.tail_fit_ok;
  result.warnings = tab.warnings;
  if (!agreed)
    result.warnings.push_back(
        "quadrature step halving exhausted before the refinement target was "
        "met");
  return result;
}

double mean_waiting_time_numeric(const ScaledParams& p, double tol) {
  WaitingTimeOptions opt;
  opt.tol = tol;
  return mean_waiting_time(p, opt).tau;
}

double invert_survival(const SurvivalTable& table, double u) {
  if (!(u >= 0.0) || !(u < 1.0))
    throw std::invalid_argument("invert_survival: u must lie in [0, 1)");
  const double target = 1.0 - u;
  if (target >= 1.0) return 0.0;
  if (target <= table.p_cut) {
    // Exponential tail: P0(t) = p_cut e^{-lambda (t - t_cut)}.
    return table.t_cut + std::log(table.p_cut / target) / table.tail_rate;
  }
  std::size_t lo = 0, hi = table.survival.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (table.survival[mid] >= target)
      lo = mid;
    else
      hi = mid;
  }
  const double p0 = table.survival[lo];
  const double p1 = table.survival[hi];
  if (!(p0 > p1)) return table.times[lo];  // numerically flat segment
  const double f =
      (std::log(p0) - std::log(target)) / (std::log(p0) - std::log(p1));
  return table.times[lo] + f * (table.times[hi] - table.times[lo]);
}

std::vector<double> sample_waiting_times(const SurvivalTable& table,
                                         std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<double> out(n);
  for (double& tau : out) {
    // Top 53 bits -> uniform in [0, 1); avoids distribution-object
    // differences across standard libraries, so seeds reproduce everywhere.
    const double u =
        static_cast<double>(engine() >> 11) * 0x1.0p-53;
    tau = invert_survival(table, u);
  }
  return out;
}

std::vector<double> sample_waiting_times(const ScaledParams& p, std::size_t n,
                                         std::uint64_t seed,
                                         const WaitingTimeOptions& opt) {
  const SurvivalTable table = survival_table(p, opt);
  return sample_waiting_times(table, n, seed);
}

}  // namespace photon
