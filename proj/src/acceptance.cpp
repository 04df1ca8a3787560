#include "photon/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "photon/bessel.hpp"
#include "photon/bloch.hpp"
#include "photon/dynamics.hpp"
#include "photon/format.hpp"
#include "photon/parallel.hpp"
#include "photon/resonance.hpp"
#include "photon/rg.hpp"
#include "photon/sweep.hpp"

namespace photon {

namespace {

// Every tolerance a criterion is judged against, in one place.
constexpr double kC1RelTol = 0.02;       // closed form vs ode, rel deviation
constexpr double kC1PeakWindow = 0.1;    // ode peak proximity to J_0 zeros
constexpr double kC1TimeBudget = 300.0;  // s, single-threaded full sweep
constexpr double kC3MergeAgree = 1e-6;   // branch-merge gamma agreement
constexpr double kC3BetaLo = 0.45;       // fold exponent window
constexpr double kC3BetaHi = 0.55;
constexpr double kC3ArgmaxTol = 0.02;    // ode argmax vs root distance
constexpr double kC4TolWeak = 0.10;      // spectra, rabi = 0.29 gamma
constexpr double kC4TolStrong = 0.20;    // spectra, rabi = 3.2 gamma
constexpr double kC4PeakInt = 0.03;      // spectral peaks sit at integers
constexpr double kC5Monotone = 1e-9;     // survival monotonicity slack
constexpr double kC6KsCoeff = 1.6276;    // KS critical value at alpha = 0.01

std::string num(double v) { return format_sig12(v); }

std::string verdict(bool ok) { return ok ? " ok" : " FAIL"; }

// ---------------------------------------------------------------------------
// 1. Closed-form rate against the ode quadrature across the weak-drive plane.

CriterionResult criterion1(const AcceptanceOptions&) {
  CriterionResult r;
  constexpr double rabi = 0.1;
  constexpr std::array<double, 3> gammas{0.5, 1.5, 3.0};
  const std::vector<double> grid = sweep_grid(0.0, 8.0, 0.05);

  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;

  // Deliberately a plain single-threaded loop: the time budget below is a
  // statement about absolute cost, so it must not scale with the machine.
  std::vector<double> tau_g05(grid.size());
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    const double g = gammas[gi];
    double worst = 0.0, worst_xi = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double tau_ode =
          mean_waiting_time(ScaledParams::from_xi(grid[i], g, rabi)).tau;
      if (gi == 0) tau_g05[i] = tau_ode;
      const double tau_rg = mean_tau_rg(grid[i], g, rabi).tau();
      const double rel = std::abs(tau_ode - tau_rg) / tau_ode;
      if (rel > worst) {
        worst = rel;
        worst_xi = grid[i];
      }
    }
    const bool gok = worst <= kC1RelTol;
    ok = ok && gok;
    r.details.push_back("gamma = " + num(g) +
                        ": worst |tau_ode - tau_rg| / tau_ode = " +
                        num(worst) + " at xi = " + num(worst_xi) + " (tol " +
                        num(kC1RelTol) + ")" + verdict(gok));
  }

  // At the smallest linewidth the ode maxima must sit by the first two J_0
  // zeros -- and closer to their second-order-shifted positions than to the
  // bare zeros, which is what distinguishes the shifted prediction.
  for (int n = 1; n <= 2; ++n) {
    const double xin = bessel_j0_zero(n);
    double best = -std::numeric_limits<double>::infinity(), peak = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(grid[i] - xin) > 1.0) continue;
      if (tau_g05[i] > best) {
        best = tau_g05[i];
        peak = grid[i];
      }
    }
    const double shifted = xin + small_gamma_shift(n, 0.5);
    const bool near = std::abs(peak - xin) <= kC1PeakWindow;
    const bool closer = std::abs(peak - shifted) < std::abs(peak - xin);
    ok = ok && near && closer;
    r.details.push_back(
        "gamma = 0.5 ode peak " + std::to_string(n) + " at xi = " + num(peak) +
        ": |peak - " + num(xin) + "| <= " + num(kC1PeakWindow) + verdict(near) +
        "; closer to shifted " + num(shifted) + " than to the bare zero" +
        verdict(closer));
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const bool in_budget = elapsed < kC1TimeBudget;
  ok = ok && in_budget;
  r.details.push_back("single-threaded sweep took " + num(elapsed) +
                      " s (budget " + num(kC1TimeBudget) + " s)" +
                      verdict(in_budget));
  r.pass = ok;
  return r;
}

// ---------------------------------------------------------------------------
// 2. Extremum census below and above the first two critical linewidths.

CriterionResult criterion2(const AcceptanceOptions&) {
  CriterionResult r;
  bool ok = true;

  // The window [2, 7.2] covers both max-min pairs (the n = 2 minimum sits
  // just past 7) while excluding the n = 3 pair near 8.65.
  constexpr double kLo = 2.0;
  constexpr double kHi = 7.2;
  constexpr double kAdjacent = 0.5;  // "adjacent to the J_0 zero" radius

  const std::vector<ExtremumRecord> recs = find_extrema(1.0, kLo, kHi);
  const bool count_ok = recs.size() == 4;
  ok = ok && count_ok;
  r.details.push_back("gamma = 1.0, xi in [2, 7.2]: found " +
                      std::to_string(recs.size()) +
                      " stationary points (want 4: both max-min pairs)" +
                      verdict(count_ok));
  constexpr std::array<ExtremumKind, 4> want_kind{
      ExtremumKind::Maximum, ExtremumKind::Minimum, ExtremumKind::Maximum,
      ExtremumKind::Minimum};
  constexpr std::array<int, 4> want_n{1, 1, 2, 2};
  for (std::size_t i = 0; i < recs.size() && i < 4; ++i) {
    bool rec_ok = recs[i].kind == want_kind[i] && recs[i].n == want_n[i];
    std::string note;
    if (recs[i].kind == ExtremumKind::Maximum) {
      // The dichotomy statement: each surviving maximum is adjacent to its
      // J_0 zero.
      const double dist = std::abs(recs[i].xi_star -
                                   bessel_j0_zero(want_n[i]));
      rec_ok = rec_ok && dist <= kAdjacent;
      note = ", |xi* - xi_n| = " + num(dist) + " (tol " + num(kAdjacent) +
             ")";
    }
    ok = ok && rec_ok;
    r.details.push_back(
        "  xi* = " + num(recs[i].xi_star) + ": " +
        (recs[i].kind == ExtremumKind::Maximum ? "maximum" : "minimum") +
        ", n = " + std::to_string(recs[i].n) + " (want " +
        (want_kind[i] == ExtremumKind::Maximum ? "maximum" : "minimum") +
        ", n = " + std::to_string(want_n[i]) + ")" + note + verdict(rec_ok));
  }

  const std::vector<ExtremumRecord> none = find_extrema(2.5, kLo, kHi);
  const bool empty_ok = none.empty();
  ok = ok && empty_ok;
  r.details.push_back("gamma = 2.5, xi in [2, 7.2]: found " +
                      std::to_string(none.size()) +
                      " stationary points (want 0: both pairs annihilated)" +
                      verdict(empty_ok));
  r.pass = ok;
  return r;
}

// ---------------------------------------------------------------------------
// 3. Critical points: location, branch-merge consistency, fold exponent, and
//    agreement of the closed-form maximum with the ode argmax.

CriterionResult criterion3(const AcceptanceOptions& opt) {
  CriterionResult r;
  bool ok = true;

  for (int n = 1; n <= 2; ++n) {
    const CriticalPointDetail d = find_critical_point_detail(n);
    const bool range_ok = d.point.gamma_cr > 1.0 && d.point.gamma_cr < 2.5;
    const double merge_gap = std::abs(d.gamma_merge_max - d.gamma_merge_min);
    const bool merge_ok = merge_gap <= kC3MergeAgree;
    ok = ok && range_ok && merge_ok;
    r.details.push_back("n = " + std::to_string(n) + ": gamma_cr = " +
                        num(d.point.gamma_cr) + ", xi_cr = " +
                        num(d.point.xi_cr) + "; gamma_cr in (1, 2.5)" +
                        verdict(range_ok));
    r.details.push_back("  max/min branch merge gammas differ by " +
                        num(merge_gap) + " (tol " + num(kC3MergeAgree) + ")" +
                        verdict(merge_ok));

    const ExponentFit fit = critical_exponent_fit(n);
    const bool beta_ok = fit.beta >= kC3BetaLo && fit.beta <= kC3BetaHi;
    ok = ok && beta_ok;
    r.details.push_back("  fold exponent beta = " + num(fit.beta) + " +- " +
                        num(fit.ci_half_width) + " (want [" + num(kC3BetaLo) +
                        ", " + num(kC3BetaHi) + "], square-root fold)" +
                        verdict(beta_ok));
  }

  // The n = 1 maximum from the stationarity root against the argmax of the
  // full ode mean waiting time, scanned on a +-0.1 window.
  constexpr std::array<double, 3> gammas{0.25, 0.5, 1.0};
  constexpr double rabi = 0.1;
  std::array<double, 3> roots{};
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    roots[gi] = std::numeric_limits<double>::quiet_NaN();
    for (const ExtremumRecord& rec : find_extrema(gammas[gi], 2.0, 3.6))
      if (rec.kind == ExtremumKind::Maximum && rec.n == 1) {
        roots[gi] = rec.xi_star;
        break;
      }
  }

  constexpr int half = 10;  // 21 scan points, step 0.01
  std::array<std::array<double, 2 * half + 1>, 3> taus{};
  parallel_for(gammas.size() * (2 * half + 1), opt.jobs,
               [&](std::size_t flat) {
                 const std::size_t gi = flat / (2 * half + 1);
                 const int j = static_cast<int>(flat % (2 * half + 1)) - half;
                 if (std::isnan(roots[gi])) return;
                 const double x = roots[gi] + 0.01 * j;
                 taus[gi][static_cast<std::size_t>(j + half)] =
                     mean_waiting_time(
                         ScaledParams::from_xi(x, gammas[gi], rabi))
                         .tau;
               });

  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    if (std::isnan(roots[gi])) {
      ok = false;
      r.details.push_back("gamma = " + num(gammas[gi]) +
                          ": no n = 1 maximum found FAIL");
      continue;
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < taus[gi].size(); ++j)
      if (taus[gi][j] > taus[gi][best]) best = j;
    const double argmax =
        roots[gi] + 0.01 * (static_cast<int>(best) - half);
    const double dist = std::abs(argmax - roots[gi]);
    const bool argmax_ok = dist <= kC3ArgmaxTol;
    ok = ok && argmax_ok;
    r.details.push_back("gamma = " + num(gammas[gi]) + ": ode argmax " +
                        num(argmax) + " vs root " + num(roots[gi]) +
                        ", distance " + num(dist) + " (tol " +
                        num(kC3ArgmaxTol) + ")" + verdict(argmax_ok));
  }
  r.pass = ok;
  return r;
}

// ---------------------------------------------------------------------------
// 4. Saturation-broadened spectra against the Bloch limit cycle.

CriterionResult criterion4(const AcceptanceOptions& opt) {
  CriterionResult r;
  constexpr double xi = 1.14;
  constexpr double gamma = 1.0 / 7.0;
  constexpr std::array<double, 3> ratios{0.29, 0.9, 3.2};
  const std::vector<double> grid = sweep_grid(-2.0, 2.0, 0.02);
  bool ok = true;

  for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
    const double rabi = ratios[ri] * gamma;
    std::vector<double> rg(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      rg[i] =
          emission_rate_strong_drive(xi, gamma, rabi, grid[i]).inverse_tau;
    std::vector<double> bl = emission_spectrum_bloch(
        ScaledParams::from_xi(xi, gamma, rabi), grid, 1e-8, opt.jobs);

    auto normalize = [](std::vector<double>& col) {
      const double mx = *std::max_element(col.begin(), col.end());
      for (double& v : col) v /= mx;
    };
    normalize(rg);
    normalize(bl);

    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      diff = std::max(diff, std::abs(rg[i] - bl[i]));

    if (ri == 1) {
      // The intermediate drive has no stated bound; recorded for the log.
      r.details.push_back("rabi = 0.9 gamma: normalized max deviation " +
                          num(diff) + " (informational)");
    } else {
      const double tol = ri == 0 ? kC4TolWeak : kC4TolStrong;
      const bool dok = diff <= tol;
      ok = ok && dok;
      r.details.push_back("rabi = " + num(ratios[ri]) +
                          " gamma: normalized max deviation " + num(diff) +
                          " (tol " + num(tol) + ")" + verdict(dok));
    }

    // Both curves must peak within a fraction of a grid cell of an integer
    // detuning: emission maximizes where a sideband meets the laser.
    for (int which = 0; which < 2; ++which) {
      const std::vector<double>& col = which == 0 ? rg : bl;
      const std::size_t best =
          static_cast<std::size_t>(std::distance(
              col.begin(), std::max_element(col.begin(), col.end())));
      const double d = grid[best];
      const double off = std::abs(d - std::round(d));
      const bool pok = off <= kC4PeakInt;
      ok = ok && pok;
      r.details.push_back(std::string("  ") + (which == 0 ? "rg" : "bloch") +
                          " peak at delta = " + num(d) + ", " + num(off) +
                          " from the nearest integer (tol " +
                          num(kC4PeakInt) + ")" + verdict(pok));
    }
  }
  r.pass = ok;
  return r;
}

// ---------------------------------------------------------------------------
// 5. Structural invariants and exact identities.

CriterionResult criterion5(const AcceptanceOptions& opt) {
  CriterionResult r;
  bool ok = true;

  // (a) Survival probability never increases, including strong drive and
  // detuned cases.
  {
    const std::array<ScaledParams, 5> sets{
        ScaledParams::from_xi(1.5, 0.5, 0.1),
        ScaledParams::from_xi(2.405, 0.5, 0.1),
        ScaledParams::from_xi(1.14, 1.0 / 7.0, 0.457, 0.5),
        ScaledParams::from_xi(0.8, 1.0, 0.3, -0.7),
        ScaledParams::from_xi(5.52, 3.0, 0.2),
    };
    double worst = 0.0;
    for (const ScaledParams& p : sets) {
      const Trajectory tr = evolve(p, 200.0, 1e-9, 1601);
      for (std::size_t i = 0; i + 1 < tr.survival.size(); ++i)
        worst = std::max(worst, tr.survival[i + 1] - tr.survival[i]);
    }
    const bool mono = worst <= kC5Monotone;
    ok = ok && mono;
    r.details.push_back("survival monotone on 5 parameter sets: worst rise " +
                        num(worst) + " (slack " + num(kC5Monotone) + ")" +
                        verdict(mono));
  }

  // (b) gamma = 0 conserves the norm.
  {
    const Trajectory tr =
        evolve(ScaledParams::from_xi(1.5, 0.0, 0.3), 1000.0, 1e-12, 501);
    double drift = 0.0;
    for (double s : tr.survival) drift = std::max(drift, std::abs(s - 1.0));
    const bool norm_ok = drift < 1e-9;
    ok = ok && norm_ok;
    r.details.push_back("gamma = 0 norm drift over t = 1000: " + num(drift) +
                        " (< 1e-09)" + verdict(norm_ok));
  }

  // (c) Truncated Bessel rows carry all but < 1e-12 of the weight, and the
  // normalization never overshoots 1.
  {
    double lo = 2.0, hi = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = 0.1 * i;
      const BesselRow row = bessel_row(x, truncation_order(x, 1e-12));
      double q = row.values[0] * row.values[0];
      for (int k = 1; k <= row.order; ++k)
        q += 2.0 * row.values[k] * row.values[k];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    const bool sum_ok = lo >= 1.0 - 1e-12 && hi <= 1.0;
    ok = ok && sum_ok;
    r.details.push_back("sum_k J_k^2 on xi in [0, 10]: range [" + num(lo) +
                        ", " + num(hi) + "] (want within [1 - 1e-12, 1])" +
                        verdict(sum_ok));
  }

  // (d) The analytic dS/dxi matches a central finite difference.
  {
    std::mt19937_64 eng(opt.seed);
    const auto u01 = [&eng] {
      return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    constexpr double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double x = 8.0 * u01();
      const double g = 0.2 + 2.8 * u01();
      const double an = lorentz_sum_dxi(x, g);
      const double fd =
          (lorentz_sum(x + h, g, 0.0) - lorentz_sum(x - h, g, 0.0)) /
          (2.0 * h);
      worst = std::max(worst,
                       std::abs(an - fd) / std::max(1.0, std::abs(an)));
    }
    const bool fd_ok = worst <= 1e-6;
    ok = ok && fd_ok;
    r.details.push_back(
        "analytic dS/dxi vs central difference, 50 random points: worst " +
        num(worst) + " (tol 1e-06)" + verdict(fd_ok));
  }

  // (e) The detuned closed form at delta = 0 IS the resonant one -- same
  // bits, not merely close.
  {
    bool same = true;
    const double pts[3][3] = {
        {1.5, 0.5, 0.1}, {2.4, 1.0, 0.05}, {5.5, 2.0, 0.3}};
    for (const auto& q : pts)
      same = same && mean_tau_rg_detuned(q[0], q[1], q[2], 0.0).inverse_tau ==
                         mean_tau_rg(q[0], q[1], q[2]).inverse_tau;
    ok = ok && same;
    r.details.push_back(
        std::string(
            "detuned rate at delta = 0 is bit-identical to the resonant "
            "rate") +
        verdict(same));
  }

  // (f) The saturated rate at xi = 0 collapses exactly to the two-level
  // resonance-fluorescence rate.
  {
    bool same = true;
    const double pts[3][2] = {{1.0 / 7.0, 0.29 / 7.0}, {0.5, 0.1}, {1.0, 0.25}};
    for (const auto& q : pts) {
      const double om2 = q[1] * q[1];
      same = same &&
             emission_rate_strong_drive(0.0, q[0], q[1], 0.0).inverse_tau ==
                 (q[0] * om2) / (q[0] * q[0] + 2.0 * om2);
    }
    ok = ok && same;
    r.details.push_back(
        std::string("saturated rate at xi = 0 collapses exactly to gamma "
                    "Omega^2 / (gamma^2 + 2 Omega^2)") +
        verdict(same));
  }

  // (g) 1/(2 zeta) equals the closed-form mean waiting time.
  {
    double worst = 0.0;
    const double pts[3][3] = {
        {1.5, 0.5, 0.1}, {2.405, 0.5, 0.1}, {0.7, 2.0, 0.3}};
    for (const auto& q : pts) {
      const double zeta = decay_constant(q[0], q[1], q[2]);
      const double tau = mean_tau_rg(q[0], q[1], q[2]).tau();
      worst = std::max(worst, std::abs(1.0 / (2.0 * zeta) - tau) / tau);
    }
    const bool zeta_ok = worst <= 1e-12;
    ok = ok && zeta_ok;
    r.details.push_back("1 / (2 zeta) vs closed-form <tau>: worst rel " +
                        num(worst) + " (tol 1e-12)" + verdict(zeta_ok));
  }

  r.pass = ok;
  return r;
}

// ---------------------------------------------------------------------------
// 6. Waiting-time sampler statistics.

// Log-survival with the same grid interpolation and exponential tail the
// sampler inverts, so the KS statistic measures sampling alone.
double log_survival(const SurvivalTable& tab, double t) {
  if (t >= tab.t_cut)
    return std::log(std::max(tab.p_cut, 1e-300)) -
           tab.tail_rate * (t - tab.t_cut);
  const std::size_t last = tab.times.size() - 1;
  const double pos = t / tab.dt;
  if (pos <= 0.0) return std::log(std::max(tab.survival.front(), 1e-300));
  std::size_t i = static_cast<std::size_t>(pos);
  if (i >= last) i = last - 1;
  const double f = pos - static_cast<double>(i);
  const double lp0 = std::log(std::max(tab.survival[i], 1e-300));
  const double lp1 = std::log(std::max(tab.survival[i + 1], 1e-300));
  return (1.0 - f) * lp0 + f * lp1;
}

CriterionResult criterion6(const AcceptanceOptions& opt) {
  CriterionResult r;
  const ScaledParams p = ScaledParams::from_xi(1.0, 0.5, 0.1);
  const SurvivalTable table = survival_table(p);
  const std::size_t n = 100000;
  std::vector<double> samples = sample_waiting_times(table, n, opt.seed);

  const double tau = mean_waiting_time(p).tau;
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var /= static_cast<double>(n - 1);
  const double se = std::sqrt(var / static_cast<double>(n));
  const bool mean_ok = std::abs(mean - tau) <= 3.0 * se;
  r.details.push_back("sample mean " + num(mean) + " vs quadrature <tau> " +
                      num(tau) + ": |diff| = " + num(std::abs(mean - tau)) +
                      " <= 3 SE = " + num(3.0 * se) + verdict(mean_ok));

  std::sort(samples.begin(), samples.end());
  double dks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = 1.0 - std::exp(log_survival(table, samples[i]));
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    dks = std::max(dks, std::max(cdf - lo, hi - cdf));
  }
  const double crit = kC6KsCoeff / std::sqrt(static_cast<double>(n));
  const bool ks_ok = dks <= crit;
  r.details.push_back("KS distance to 1 - P0 from the same table: D = " +
                      num(dks) + " (critical " + num(crit) +
                      " at alpha = 0.01)" + verdict(ks_ok));

  r.pass = mean_ok && ks_ok;
  return r;
}

// ---------------------------------------------------------------------------
// 0. Informational spot check of a user-supplied parameter point.

CriterionResult spot_check(const ScaledParams& p,
                           const AcceptanceOptions& opt) {
  CriterionResult r;
  r.pass = true;  // never scored
  validate(p);
  r.details.push_back("params: xi = " + num(p.xi()) + ", gamma = " +
                      num(p.gamma) + ", rabi = " + num(p.rabi) +
                      ", detuning = " + num(p.detuning));
  r.details.push_back("regime: " + to_string(classify_regime(p)));
  std::vector<Engine> engines;
  if (p.detuning == 0.0) engines.push_back(Engine::RgWeak);
  engines.insert(engines.end(), {Engine::RgDetuned, Engine::RgStrong,
                                 Engine::Bloch, Engine::Ode});
  for (Engine e : engines) {
    try {
      std::vector<std::string> warn;
      const double rate = engine_rate(e, p, 1e-9, &warn);
      r.details.push_back(to_string(e) + ": rate = " + num(rate) +
                          ", <tau> = " + num(1.0 / rate));
      for (const std::string& w : warn)
        r.details.push_back("  warning: " + w);
    } catch (const std::exception& ex) {
      r.details.push_back(to_string(e) + ": error: " + std::string(ex.what()));
    }
  }
  (void)opt;
  return r;
}

}  // namespace

AcceptanceReport run_acceptance(
    const AcceptanceOptions& opt,
    const std::function<void(const CriterionResult&)>& on_result) {
  struct Entry {
    int id;
    const char* name;
    CriterionResult (*fn)(const AcceptanceOptions&);
  };
  const Entry entries[] = {
      {1, "closed-form rate against ode quadrature, weak drive", criterion1},
      {2, "extremum census across the first critical linewidths", criterion2},
      {3, "critical points, fold exponent, ode argmax agreement", criterion3},
      {4, "detuning spectra against the bloch limit cycle", criterion4},
      {5, "structural invariants and exact identities", criterion5},
      {6, "waiting-time sampler statistics", criterion6},
  };

  const auto wanted = [&opt](int id) {
    return opt.only.empty() ||
           std::find(opt.only.begin(), opt.only.end(), id) != opt.only.end();
  };

  AcceptanceReport report;
  report.all_pass = true;

  const auto run_one = [&](int id, const char* name, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = fn();
    } catch (const std::exception& ex) {
      res.pass = false;
      res.details.push_back("exception: " + std::string(ex.what()));
    }
    res.id = id;
    res.name = name;
    res.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report.all_pass = report.all_pass && res.pass;
    if (on_result) on_result(res);
    report.criteria.push_back(std::move(res));
  };

  if (opt.spot_check.has_value() && wanted(0))
    run_one(0, "spot check (informational, never scored)",
            [&] { return spot_check(*opt.spot_check, opt); });
  for (const Entry& e : entries)
    if (wanted(e.id)) run_one(e.id, e.name, [&] { return e.fn(opt); });
  return report;
}

}  // namespace photon
