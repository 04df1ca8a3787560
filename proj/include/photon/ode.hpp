#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "photon/errors.hpp"

namespace photon {

struct StepControl {
  double rtol = 1e-9;     // relative tolerance per component
  double atol = 1e-12;    // absolute tolerance per component
  double h_floor = 1e-14; // below this the step size has underflowed
};

// Embedded Dormand-Prince 5(4) pair with FSAL and the classic quartic dense
// output.  The state is a flat array of N doubles; complex amplitudes are
// carried as interleaved real/imaginary pairs by the caller.
//
// Rhs must be callable as rhs(t, y, dydt) with y/dydt of type State.
// Usage: construct, then call step(t_limit) until t() reaches t_limit;
// after each accepted step dense(ti) interpolates on [t_old(), t()].
template <std::size_t N, typename Rhs>
class Dopri5 {
public:
  using State = std::array<double, N>;

  Dopri5(Rhs rhs, double t0, const State& y0, StepControl ctrl = {})
      : rhs_(std::move(rhs)), ctrl_(ctrl), t_(t0), t_old_(t0), y_(y0),
        y_old_(y0) {
    rhs_(t_, y_, k_[0]);
    h_ = initial_step();
  }

  double t() const { return t_; }
  double t_old() const { return t_old_; }
  double h_last() const { return h_used_; }
  const State& y() const { return y_; }
  unsigned long n_accepted() const { return n_accepted_; }
  unsigned long n_rejected() const { return n_rejected_; }

  // One accepted adaptive step, clipped so it never passes t_limit.
  // Returns the new time; afterwards dense() is valid on [t_old(), t()].
  double step(double t_limit) {
    if (!(t_limit > t_)) return t_;
    for (;;) {
      double h = h_;
      bool clipped = false;
      if (t_ + h >= t_limit) {
        h = t_limit - t_;
        clipped = true;
      }
      if (h < ctrl_.h_floor)
        throw StepSizeUnderflow("integrator step size underflow at t = " +
                                std::to_string(t_));

      // Stages 2..6, then the FSAL stage 7 at (t+h, y_new).
      State ytmp;
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y_[i] + h * a21 * k_[0][i];
      rhs_(t_ + c2 * h, ytmp, k_[1]);
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y_[i] + h * (a31 * k_[0][i] + a32 * k_[1][i]);
      rhs_(t_ + c3 * h, ytmp, k_[2]);
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] =
            y_[i] + h * (a41 * k_[0][i] + a42 * k_[1][i] + a43 * k_[2][i]);
      rhs_(t_ + c4 * h, ytmp, k_[3]);
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y_[i] + h * (a51 * k_[0][i] + a52 * k_[1][i] +
                               a53 * k_[2][i] + a54 * k_[3][i]);
      rhs_(t_ + c5 * h, ytmp, k_[4]);
      for (std::size_t i = 0; i < N; ++i)
        ytmp[i] = y_[i] + h * (a61 * k_[0][i] + a62 * k_[1][i] +
                               a63 * k_[2][i] + a64 * k_[3][i] +
                               a65 * k_[4][i]);
      rhs_(t_ + h, ytmp, k_[5]);
      State ynew;
      for (std::size_t i = 0; i < N; ++i)
        ynew[i] = y_[i] + h * (a71 * k_[0][i] + a73 * k_[2][i] +
                               a74 * k_[3][i] + a75 * k_[4][i] +
                               a76 * k_[5][i]);
      rhs_(t_ + h, ynew, k_[6]);

      // Scaled RMS error of the embedded 4th-order difference.
      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double ei = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] +
                               e5 * k_[4][i] + e6 * k_[5][i] + e7 * k_[6][i]);
        const double sk =
            ctrl_.atol +
            ctrl_.rtol * std::max(std::abs(y_[i]), std::abs(ynew[i]));
        const double r = ei / sk;
        err += r * r;
      }
      err = std::sqrt(err / static_cast<double>(N));

      if (err <= 1.0) {
        prepare_dense(h, ynew);
        t_old_ = t_;
        y_old_ = y_;
        t_ = clipped ? t_limit : t_ + h;
        y_ = ynew;
        k_[0] = k_[6];  // first-same-as-last
        h_used_ = h;
        double fac = err == 0.0 ? fac_max
                                : std::clamp(safety * std::pow(err, -0.2),
                                             fac_min,
                                             just_rejected_ ? 1.0 : fac_max);
        // A step clipped to hit t_limit says nothing about the error at the
        // working step size, so never let it shrink h_.
        if (!clipped) h_ = h * fac;
        just_rejected_ = false;
        ++n_accepted_;
        return t_;
      }

      ++n_rejected_;
      just_rejected_ = true;
      h_ = h * std::clamp(safety * std::pow(err, -0.2), fac_min, 1.0);
    }
  }

  // Quartic interpolation inside the last accepted step.
  State dense(double ti) const {
    const double theta = h_used_ > 0.0 ? (ti - t_old_) / h_used_ : 0.0;
    const double th1 = 1.0 - theta;
    State out;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = rcont_[0][i] +
               theta * (rcont_[1][i] +
                        th1 * (rcont_[2][i] +
                               theta * (rcont_[3][i] + th1 * rcont_[4][i])));
    }
    return out;
  }

private:
  void prepare_dense(double h, const State& ynew) {
    for (std::size_t i = 0; i < N; ++i) {
      const double ydiff = ynew[i] - y_[i];
      const double bspl = h * k_[0][i] - ydiff;
      rcont_[0][i] = y_[i];
      rcont_[1][i] = ydiff;
      rcont_[2][i] = bspl;
      rcont_[3][i] = ydiff - h * k_[6][i] - bspl;
      rcont_[4][i] = h * (d1 * k_[0][i] + d3 * k_[2][i] + d4 * k_[3][i] +
                          d5 * k_[4][i] + d6 * k_[5][i] + d7 * k_[6][i]);
    }
  }

  // Standard starting-step heuristic: compare the state scale against the
  // derivative scale, probe one explicit Euler step, bound by curvature.
  double initial_step() {
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = ctrl_.atol + ctrl_.rtol * std::abs(y_[i]);
      const double r0 = y_[i] / sk;
      const double r1 = k_[0][i] / sk;
      d0 += r0 * r0;
      d1n += r1 * r1;
    }
    d0 = std::sqrt(d0 / static_cast<double>(N));
    d1n = std::sqrt(d1n / static_cast<double>(N));
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * (d0 / d1n);

    State y1, f1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h0 * k_[0][i];
    rhs_(t_ + h0, y1, f1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = ctrl_.atol + ctrl_.rtol * std::abs(y_[i]);
      const double r = (f1[i] - k_[0][i]) / sk;
      d2 += r * r;
    }
    d2 = std::sqrt(d2 / static_cast<double>(N)) / h0;

    const double dmax = std::max(d1n, d2);
    const double h1 =
        dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min(100.0 * h0, h1);
  }

  // Butcher tableau of the Dormand-Prince 5(4) pair.
  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                          c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                          a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                          a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                          a76 = 11.0 / 84.0;
  // 5th-minus-4th order error weights.
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                          e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                          e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  // Dense-output weights for the 5th coefficient.
  static constexpr double d1 = -12715105075.0 / 11282082432.0,
                          d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0,
                          d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0,
                          d7 = 69997945.0 / 29380423.0;
  static constexpr double safety = 0.9, fac_min = 0.2, fac_max = 5.0;

  Rhs rhs_;
  StepControl ctrl_;
  double t_, t_old_;
  double h_ = 0.0, h_used_ = 0.0;
  State y_, y_old_;
  std::array<State, 7> k_{};
  std::array<State, 5> rcont_{};
  unsigned long n_accepted_ = 0, n_rejected_ = 0;
  bool just_rejected_ = false;
};

// Drives a Dopri5 across sorted sample times, invoking
// cb(index, time, state) for each; cb returns false to stop early.
// Samples at t0 are reported from the initial state directly.
template <std::size_t N, typename Rhs, typename Callback>
void integrate_sampled(Rhs rhs, double t0, const std::array<double, N>& y0,
                       std::span<const double> times, StepControl ctrl,
                       Callback&& cb) {
  Dopri5<N, Rhs> stepper(std::move(rhs), t0, y0, ctrl);
  std::size_t next = 0;
  while (next < times.size() && times[next] <= t0) {
    if (!cb(next, times[next], y0)) return;
    ++next;
  }
  while (next < times.size()) {
    stepper.step(times.back());
    while (next < times.size() && times[next] <= stepper.t()) {
      if (!cb(next, times[next], stepper.dense(times[next]))) return;
      ++next;
    }
  }
}

}  // namespace photon
