#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "photon/params.hpp"

namespace photon {

// Which machinery produces the emission rate at a grid point.  Every engine
// returns the same observable -- the rate 1/<tau> in rf units -- so columns
// from different engines are directly comparable.
enum class Engine {
  Ode,       // quadrature of the survival probability (reference)
  RgWeak,    // weak-drive closed form, resonant laser
  RgDetuned, // weak-drive closed form, detuned laser
  RgStrong,  // strong-drive closed form with saturation broadening
  Bloch,     // gamma * period-averaged excited population
};

std::string to_string(Engine e);
std::optional<Engine> engine_from_string(std::string_view name);

enum class SweepVariable { Xi, Gamma, Delta, Rabi };

std::string to_string(SweepVariable v);
std::optional<SweepVariable> sweep_variable_from_string(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::Xi;
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  ScaledParams fixed;            // values of the non-swept parameters
  std::vector<Engine> engines;   // one result column per engine
  double tol = 1e-9;             // integrator tolerance for ode/bloch engines
  int jobs = 0;                  // worker pool size; 0 = available parallelism
};

// One engine's result at one grid point.  A failed point records the error
// text and leaves the rate NaN; it never aborts the sweep.
struct SweepCell {
  double rate = std::numeric_limits<double>::quiet_NaN();
  std::string error;
  std::vector<std::string> warnings;
};

struct SweepRow {
  std::size_t index = 0;
  double value = 0.0;     // swept-variable value at this grid point
  ScaledParams params;    // fully resolved parameters at this point
  std::vector<SweepCell> cells;  // parallel to SweepSpec::engines
};

struct SweepTable {
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

// Inclusive grid lo, lo+step, ... capped at hi (a final point is kept when
// it lands within half a step's rounding of hi).  A range narrower than one
// step yields the single point lo.
std::vector<double> sweep_grid(double lo, double hi, double step);

// Evaluate one engine at one parameter point.  Regime-compatibility warnings
// are appended to *warnings when the engine is used outside the regime it
// was derived for.  Domain errors propagate as exceptions.
double engine_rate(Engine e, const ScaledParams& p, double tol,
                   std::vector<std::string>* warnings);

// Run the sweep: grid points dispatched to a worker pool, rows assembled in
// grid order regardless of completion order.  Per-point failures land in the
// error cell.  Throws std::invalid_argument on a malformed spec (lo > hi,
// step <= 0, no engines).
SweepTable run_sweep(const SweepSpec& spec);

}  // namespace photon
