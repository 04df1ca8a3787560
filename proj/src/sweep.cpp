#include "photon/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "photon/bloch.hpp"
#include "photon/dynamics.hpp"
#include "photon/parallel.hpp"
#include "photon/rg.hpp"

namespace photon {

std::string to_string(Engine e) {
  switch (e) {
    case Engine::Ode: return "ode";
    case Engine::RgWeak: return "rg_weak";
    case Engine::RgDetuned: return "rg_detuned";
    case Engine::RgStrong: return "rg_strong";
    case Engine::Bloch: return "bloch";
  }
  return "?";
}

std::optional<Engine> engine_from_string(std::string_view name) {
  if (name == "ode") return Engine::Ode;
  if (name == "rg_weak") return Engine::RgWeak;
  if (name == "rg_detuned") return Engine::RgDetuned;
  if (name == "rg_strong") return Engine::RgStrong;
  if (name == "bloch") return Engine::Bloch;
  return std::nullopt;
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Xi: return "xi";
    case SweepVariable::Gamma: return "gamma";
    case SweepVariable::Delta: return "delta";
    case SweepVariable::Rabi: return "rabi";
  }
  return "?";
}

std::optional<SweepVariable> sweep_variable_from_string(
    std::string_view name) {
  if (name == "xi") return SweepVariable::Xi;
  if (name == "gamma") return SweepVariable::Gamma;
  if (name == "delta") return SweepVariable::Delta;
  if (name == "rabi") return SweepVariable::Rabi;
  return std::nullopt;
}

std::vector<double> sweep_grid(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw std::invalid_argument("sweep_grid: bad range");
  if (!(step > 0.0))
    throw std::invalid_argument("sweep_grid: step must be > 0");

  // Round the count so grids like [0, 8] / 0.05 land on exactly 161 points,
  // then walk the last index back if rounding overshot the endpoint.
  long n = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  const double slack = 1e-9 * std::max(1.0, std::abs(hi));
  while (n > 0 && lo + static_cast<double>(n) * step > hi + slack) --n;

  std::vector<double> grid(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i)
    grid[static_cast<std::size_t>(i)] = lo + static_cast<double>(i) * step;
  return grid;
}

namespace {

ScaledParams resolve_point(SweepVariable v, double value,
                           const ScaledParams& fixed) {
  switch (v) {
    case SweepVariable::Xi:
      // Only xi matters physically (the v_g/v_e split is a pure gauge), so
      // sweeping xi re-canonicalizes to v_g = 0.
      return ScaledParams::from_xi(value, fixed.gamma, fixed.rabi,
                                   fixed.detuning);
    case SweepVariable::Gamma: {
      ScaledParams p = fixed;
      p.gamma = value;
      return p;
    }
    case SweepVariable::Delta: {
      ScaledParams p = fixed;
      p.detuning = value;
      return p;
    }
    case SweepVariable::Rabi: {
      ScaledParams p = fixed;
      p.rabi = value;
      return p;
    }
  }
  throw std::logic_error("resolve_point: unreachable");
}

void merge_warnings(std::vector<std::string>* sink,
                    std::vector<std::string> extra) {
  if (!sink) return;
  for (auto& w : extra) sink->push_back(std::move(w));
}

}  // namespace

double engine_rate(Engine e, const ScaledParams& p, double tol,
                   std::vector<std::string>* warnings) {
  switch (e) {
    case Engine::Ode: {
      WaitingTimeOptions opt;
      opt.tol = tol;
      WaitingTimeResult r = mean_waiting_time(p, opt);
      merge_warnings(warnings, std::move(r.warnings));
      return 1.0 / r.tau;
    }
    case Engine::RgWeak: {
      if (p.detuning != 0.0 && warnings)
        warnings->push_back(
            "rg_weak is a resonant-laser formula; detuning = " +
            std::to_string(p.detuning) + " is ignored");
      RatePrediction r = mean_tau_rg(p.xi(), p.gamma, p.rabi);
      merge_warnings(warnings, std::move(r.validity_warnings));
      return r.inverse_tau;
    }
    case Engine::RgDetuned: {
      RatePrediction r =
          mean_tau_rg_detuned(p.xi(), p.gamma, p.rabi, p.detuning);
      merge_warnings(warnings, std::move(r.validity_warnings));
      return r.inverse_tau;
    }
    case Engine::RgStrong: {
      RatePrediction r =
          emission_rate_strong_drive(p.xi(), p.gamma, p.rabi, p.detuning);
      merge_warnings(warnings, std::move(r.validity_warnings));
      return r.inverse_tau;
    }
    case Engine::Bloch:
      return p.gamma * period_averaged_population(p, std::max(tol, 1e-10));
  }
  throw std::logic_error("engine_rate: unreachable");
}

SweepTable run_sweep(const SweepSpec& spec) {
  if (spec.engines.empty())
    throw std::invalid_argument("run_sweep: no engines selected");
  if (!(spec.step > 0.0) || spec.hi < spec.lo)
    throw std::invalid_argument("run_sweep: bad grid specification");
  validate(spec.fixed);

  const std::vector<double> grid = sweep_grid(spec.lo, spec.hi, spec.step);
  const std::size_t n_engines = spec.engines.size();

  SweepTable table;
  table.spec = spec;
  table.rows.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table.rows[i].index = i;
    table.rows[i].value = grid[i];
    table.rows[i].params = resolve_point(spec.variable, grid[i], spec.fixed);
    table.rows[i].cells.resize(n_engines);
  }

  // Flatten (row, engine) so slow cells (ode, bloch) spread across workers.
  parallel_for(grid.size() * n_engines, spec.jobs, [&](std::size_t flat) {
    SweepRow& row = table.rows[flat / n_engines];
    SweepCell& cell = row.cells[flat % n_engines];
    const Engine engine = spec.engines[flat % n_engines];
    try {
      cell.rate = engine_rate(engine, row.params, spec.tol, &cell.warnings);
    } catch (const std::exception& ex) {
      cell.error = ex.what();
    }
  });
  return table;
}

}  // namespace photon
