#pragma once

#include <optional>
#include <string>
#include <vector>

#include "photon/params.hpp"
#include "photon/sweep.hpp"

namespace photon {

// Parsed run configuration.  Every field is optional; the CLI fills in
// defaults and command-line overrides after parsing.  Parameters may be
// given either in physical units (units = "MHz", omega_rf required) or
// directly in rf-period units (no units key).
struct RunConfig {
  std::optional<std::string> units;   // only "MHz" is recognized
  std::optional<double> omega_rf;     // physical rf frequency (MHz)
  std::optional<double> gamma;
  std::optional<double> rabi;
  std::optional<double> detuning;
  std::optional<double> v_g;
  std::optional<double> v_e;
  std::optional<double> xi;           // exclusive with v_g / v_e
  std::optional<double> t_end;
  std::optional<double> tol;
  std::optional<double> tail;
  std::optional<unsigned long long> seed;
  std::optional<int> jobs;
  std::optional<std::string> out_dir;
  std::optional<long long> n;
  std::optional<long long> n_samples;

  struct Sweep {
    std::optional<std::string> variable;
    std::optional<double> lo;
    std::optional<double> hi;
    std::optional<double> step;
    std::vector<std::string> engines;
  };
  std::optional<Sweep> sweep;
};

// Parse a JSON config file / string.  Unknown keys are rejected (ConfigParse
// names the offending key); malformed JSON reports line and column.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

// Resolve the configured parameters to dimensionless rf units.  Applies the
// MHz conversion when units are present, validates exclusivity of xi versus
// v_g/v_e, and falls back to defaults (gamma/rabi required via config or
// flags before this is called; missing values throw ConfigParse).
ScaledParams resolve_params(const RunConfig& cfg);

// JSON manifest describing a data-producing run: tool version, command,
// resolved parameters, output files, and a timestamp.  Written alongside
// generated CSVs; the CSV bytes themselves stay reproducible.
struct RunManifest {
  std::string command;
  ScaledParams params;
  unsigned long long seed = 0;
  double tol = 0.0;
  std::vector<std::string> outputs;
};

void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace photon
