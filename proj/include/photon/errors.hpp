#pragma once

#include <stdexcept>
#include <string>

namespace photon {

// Base class for every failure the library reports about the *problem*
// (divergent integrals, lost roots, unconvergent iterations, bad input
// files).  Interface misuse (wrong argument order, negative counts, ...)
// throws std::invalid_argument instead and is not meant to be caught.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// scale_to_rf_units: the rf frequency must be positive to define the units.
class NonPositiveFrequency : public Error {
public:
  using Error::Error;
};

// lorentz_sum: a term 1/(gamma^2 + 4(k-delta)^2) blows up when gamma = 0 and
// delta hits an integer k with J_k(xi) != 0.
class DivergentTerm : public Error {
public:
  using Error::Error;
};

// mean waiting time with rabi = 0 (molecule never excited) or gamma = 0
// (no spontaneous emission): the survival probability never decays.
class DivergentWaitingTime : public Error {
public:
  using Error::Error;
};

// Adaptive integrator forced below its minimum step width.
class StepSizeUnderflow : public Error {
public:
  using Error::Error;
};

// Critical-point continuation: the requested max-min pair does not exist at
// the starting decay rate.
class NoPairFound : public Error {
public:
  using Error::Error;
};

// Exponent fit: fewer than the minimum number of ladder points carry a
// surviving maximum.
class FitWindowTooNarrow : public Error {
public:
  using Error::Error;
};

// An iteration (limit-cycle averaging, Newton polish, survival decay) hit
// its hard cap before meeting its tolerance.
class NoConvergence : public Error {
public:
  using Error::Error;
};

// Malformed or unknown content in a JSON run configuration.  Carries the
// 1-based line/column when the failure is a syntax error, and the offending
// key when the failure is semantic.
class ConfigParse : public Error {
public:
  ConfigParse(const std::string& what_arg, int line = -1, int column = -1,
              std::string key = {})
      : Error(what_arg), line_(line), column_(column), key_(std::move(key)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& key() const { return key_; }

private:
  int line_ = -1;
  int column_ = -1;
  std::string key_;
};

}  // namespace photon
