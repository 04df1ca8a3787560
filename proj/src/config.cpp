#include "photon/config.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "photon/errors.hpp"
#include "photon/version.hpp"

namespace photon {

namespace {

using njson = nlohmann::json;

[[noreturn]] void bad_key(const std::string& origin, const std::string& key,
                          const std::string& why) {
  throw ConfigParse(origin + ": key '" + key + "' " + why, -1, -1, key);
}

double as_number(const njson& v, const std::string& origin,
                 const std::string& key) {
  if (!v.is_number()) bad_key(origin, key, "must be a number");
  return v.get<double>();
}

long long as_integer(const njson& v, const std::string& origin,
                     const std::string& key) {
  if (!v.is_number_integer()) bad_key(origin, key, "must be an integer");
  return v.get<long long>();
}

std::string as_string(const njson& v, const std::string& origin,
                      const std::string& key) {
  if (!v.is_string()) bad_key(origin, key, "must be a string");
  return v.get<std::string>();
}

unsigned long long as_seed(const njson& v, const std::string& origin,
                           const std::string& key) {
  if (v.is_number_unsigned()) return v.get<unsigned long long>();
  if (v.is_number_integer() && v.get<long long>() >= 0)
    return static_cast<unsigned long long>(v.get<long long>());
  bad_key(origin, key, "must be a non-negative integer");
}

RunConfig::Sweep parse_sweep(const njson& v, const std::string& origin) {
  if (!v.is_object()) bad_key(origin, "sweep", "must be an object");
  RunConfig::Sweep sw;
  for (const auto& [sk, sv] : v.items()) {
    const std::string key = "sweep." + sk;
    if (sk == "variable") {
      sw.variable = as_string(sv, origin, key);
    } else if (sk == "lo") {
      sw.lo = as_number(sv, origin, key);
    } else if (sk == "hi") {
      sw.hi = as_number(sv, origin, key);
    } else if (sk == "step") {
      sw.step = as_number(sv, origin, key);
    } else if (sk == "engines") {
      if (!sv.is_array())
        bad_key(origin, key, "must be an array of engine names");
      for (const auto& e : sv) {
        if (!e.is_string())
          bad_key(origin, key, "must be an array of engine names");
        sw.engines.push_back(e.get<std::string>());
      }
    } else if (sk == "engine") {
      sw.engines.push_back(as_string(sv, origin, key));
    } else {
      throw ConfigParse(origin + ": unknown key '" + key + "'", -1, -1, key);
    }
  }
  return sw;
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
  njson j;
  try {
    j = njson::parse(text);
  } catch (const njson::parse_error& e) {
    // Convert the 1-based byte offset into a line/column pair by scanning
    // the text up to the failure point.
    int line = 1, column = 1;
    const std::size_t upto =
        std::min(text.size(), e.byte > 0 ? e.byte - 1 : std::size_t{0});
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << origin << ":" << line << ":" << column << ": malformed JSON";
    throw ConfigParse(msg.str(), line, column);
  }
  if (!j.is_object())
    throw ConfigParse(origin + ": top-level JSON value must be an object");

  RunConfig cfg;
  for (const auto& [key, v] : j.items()) {
    if (key == "units") {
      const std::string u = as_string(v, origin, key);
      if (u != "MHz")
        bad_key(origin, key, "must be \"MHz\" (the only recognized units)");
      cfg.units = u;
    } else if (key == "omega_rf") {
      cfg.omega_rf = as_number(v, origin, key);
    } else if (key == "gamma") {
      cfg.gamma = as_number(v, origin, key);
    } else if (key == "rabi") {
      cfg.rabi = as_number(v, origin, key);
    } else if (key == "detuning") {
      cfg.detuning = as_number(v, origin, key);
    } else if (key == "v_g") {
      cfg.v_g = as_number(v, origin, key);
    } else if (key == "v_e") {
      cfg.v_e = as_number(v, origin, key);
    } else if (key == "xi") {
      cfg.xi = as_number(v, origin, key);
    } else if (key == "t_end") {
      cfg.t_end = as_number(v, origin, key);
    } else if (key == "tol") {
      cfg.tol = as_number(v, origin, key);
    } else if (key == "tail") {
      cfg.tail = as_number(v, origin, key);
    } else if (key == "seed") {
      cfg.seed = as_seed(v, origin, key);
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(as_integer(v, origin, key));
    } else if (key == "out_dir") {
      cfg.out_dir = as_string(v, origin, key);
    } else if (key == "n") {
      cfg.n = as_integer(v, origin, key);
    } else if (key == "n_samples") {
      cfg.n_samples = as_integer(v, origin, key);
    } else if (key == "sweep") {
      cfg.sweep = parse_sweep(v, origin);
    } else {
      throw ConfigParse(origin + ": unknown key '" + key + "'", -1, -1, key);
    }
  }
  if (cfg.units.has_value() && !cfg.omega_rf.has_value())
    throw ConfigParse(origin + ": 'units' requires 'omega_rf'", -1, -1,
                      "omega_rf");
  if (cfg.omega_rf.has_value() && !cfg.units.has_value())
    throw ConfigParse(origin + ": 'omega_rf' requires 'units'", -1, -1,
                      "units");
  if (cfg.xi.has_value() && (cfg.v_g.has_value() || cfg.v_e.has_value()))
    throw ConfigParse(origin + ": 'xi' is exclusive with 'v_g'/'v_e'", -1, -1,
                      "xi");
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigParse("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

ScaledParams resolve_params(const RunConfig& cfg) {
  if (!cfg.gamma.has_value())
    throw ConfigParse("missing required parameter 'gamma'", -1, -1, "gamma");
  if (!cfg.rabi.has_value())
    throw ConfigParse("missing required parameter 'rabi'", -1, -1, "rabi");

  if (cfg.units.has_value()) {
    // Physical route: MHz -> rad/s, then divide by the rf frequency.  The
    // common factor cancels, but the conversion goes through PhysicalParams
    // anyway so this is the same code path real instrument numbers take.
    constexpr double to_rad = 2.0 * std::numbers::pi * 1e6;
    PhysicalParams ph;
    ph.omega_rf = *cfg.omega_rf * to_rad;
    ph.gamma = *cfg.gamma * to_rad;
    ph.rabi = *cfg.rabi * to_rad;
    ph.detuning = cfg.detuning.value_or(0.0) * to_rad;
    if (cfg.xi.has_value()) {
      ph.v_g = 0.0;
      ph.v_e = *cfg.xi * to_rad;
    } else {
      ph.v_g = cfg.v_g.value_or(0.0) * to_rad;
      ph.v_e = cfg.v_e.value_or(0.0) * to_rad;
    }
    return scale_to_rf_units(ph);
  }

  ScaledParams p;
  p.gamma = *cfg.gamma;
  p.rabi = *cfg.rabi;
  p.detuning = cfg.detuning.value_or(0.0);
  if (cfg.xi.has_value()) {
    p.v_g = 0.0;
    p.v_e = *cfg.xi;
  } else {
    p.v_g = cfg.v_g.value_or(0.0);
    p.v_e = cfg.v_e.value_or(0.0);
  }
  validate(p);
  return p;
}

void write_manifest(const RunManifest& m, const std::string& path) {
  njson j;
  j["version"] = kVersion;
  j["command"] = m.command;
  j["params"] = {
      {"gamma", m.params.gamma},   {"rabi", m.params.rabi},
      {"detuning", m.params.detuning}, {"v_g", m.params.v_g},
      {"v_e", m.params.v_e},       {"xi", m.params.xi()},
  };
  j["seed"] = m.seed;
  j["tol"] = m.tol;
  j["outputs"] = m.outputs;

  char stamp[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  j["timestamp"] = stamp;

  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write manifest: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace photon
