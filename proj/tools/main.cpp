#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "photon/acceptance.hpp"
#include "photon/config.hpp"
#include "photon/dynamics.hpp"
#include "photon/errors.hpp"
#include "photon/figures.hpp"
#include "photon/format.hpp"
#include "photon/params.hpp"
#include "photon/resonance.hpp"
#include "photon/sweep.hpp"
#include "photon/version.hpp"

namespace {

using photon::format_sig12;

// Everything a subcommand needs after the global flags and the config file
// have been merged.
struct ToolContext {
  photon::RunConfig cfg;
  double tol = 1e-9;
  unsigned long long seed = 20260816ULL;
  int jobs = 0;
  std::string out_dir = ".";
  bool out_dir_set = false;
  std::string command;  // argv joined, recorded in manifests
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

void write_run_manifest(const ToolContext& ctx, const photon::ScaledParams& p,
                        const std::vector<std::string>& outputs,
                        const std::string& path) {
  photon::RunManifest m;
  m.command = ctx.command;
  m.params = p;
  m.seed = ctx.seed;
  m.tol = ctx.tol;
  m.outputs = outputs;
  photon::write_manifest(m, path);
}

photon::Engine parse_engine(const std::string& name) {
  const auto e = photon::engine_from_string(name);
  if (!e)
    throw photon::ConfigParse(
        "unknown engine '" + name +
            "' (try ode, rg_weak, rg_detuned, rg_strong, bloch)",
        -1, -1, "engine");
  return *e;
}

photon::SweepVariable parse_variable(const std::string& name) {
  const auto v = photon::sweep_variable_from_string(name);
  if (!v)
    throw photon::ConfigParse(
        "unknown sweep variable '" + name + "' (try xi, gamma, delta, rabi)",
        -1, -1, "sweep.variable");
  return *v;
}

int run_simulate(const ToolContext& ctx, double t_end, long long samples,
                 const std::string& basis) {
  if (samples < 2)
    throw std::invalid_argument("simulate: --samples must be at least 2");
  const photon::ScaledParams p = photon::resolve_params(ctx.cfg);

  photon::Trajectory tr;
  if (basis == "direct") {
    tr = photon::evolve(p, t_end, ctx.tol,
                        static_cast<std::size_t>(samples));
  } else {
    photon::AmplitudeForm form = photon::AmplitudeForm::Auto;
    if (basis == "weak") form = photon::AmplitudeForm::WeakDrive;
    if (basis == "strong") form = photon::AmplitudeForm::StrongDrive;
    tr = photon::evolve_amplitude_basis(p, t_end, ctx.tol,
                                        static_cast<std::size_t>(samples),
                                        form);
  }

  std::filesystem::create_directories(ctx.out_dir);
  const std::string csv_path = ctx.out_dir + "/trajectory.csv";
  {
    std::ofstream out = open_out(csv_path);
    out << "t,re_psi_g,im_psi_g,re_psi_e,im_psi_e,survival\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      const photon::StateVector& s = tr.states[i];
      out << format_sig12(tr.times[i]) << ","
          << format_sig12(s.psi_g.real()) << ","
          << format_sig12(s.psi_g.imag()) << ","
          << format_sig12(s.psi_e.real()) << ","
          << format_sig12(s.psi_e.imag()) << ","
          << format_sig12(tr.survival[i]) << "\n";
    }
  }
  const std::string man_path = ctx.out_dir + "/trajectory.manifest.json";
  write_run_manifest(ctx, p, {csv_path}, man_path);
  std::cout << "wrote " << csv_path << "\n" << "wrote " << man_path << "\n";
  return 0;
}

int run_sweep_cmd(const ToolContext& ctx_in, const std::string& variable,
                  std::optional<double> lo, std::optional<double> hi,
                  std::optional<double> step,
                  const std::vector<std::string>& engine_names) {
  ToolContext ctx = ctx_in;
  photon::SweepSpec spec;
  spec.tol = ctx.tol;
  spec.jobs = ctx.jobs;

  const photon::RunConfig::Sweep* file_sweep =
      ctx.cfg.sweep.has_value() ? &*ctx.cfg.sweep : nullptr;

  std::string var_name = variable;
  if (var_name.empty() && file_sweep && file_sweep->variable)
    var_name = *file_sweep->variable;
  if (var_name.empty())
    throw photon::ConfigParse(
        "sweep: no variable given (use --variable or a sweep config block)",
        -1, -1, "sweep.variable");
  spec.variable = parse_variable(var_name);

  const auto pick = [&](std::optional<double> flag,
                        const std::optional<double>& filed,
                        const char* what) {
    if (flag.has_value()) return *flag;
    if (filed.has_value()) return *filed;
    throw photon::ConfigParse(std::string("sweep: missing '") + what + "'",
                              -1, -1, std::string("sweep.") + what);
  };
  spec.lo = pick(lo, file_sweep ? file_sweep->lo : std::nullopt, "lo");
  spec.hi = pick(hi, file_sweep ? file_sweep->hi : std::nullopt, "hi");
  spec.step = pick(step, file_sweep ? file_sweep->step : std::nullopt, "step");

  std::vector<std::string> names = engine_names;
  if (names.empty() && file_sweep) names = file_sweep->engines;
  if (names.empty()) names = {"rg_detuned"};
  for (const std::string& n : names) spec.engines.push_back(parse_engine(n));

  // The swept variable needs no fixed value; fill a placeholder so the
  // required-parameter check doesn't trip on it.
  if (spec.variable == photon::SweepVariable::Gamma &&
      !ctx.cfg.gamma.has_value())
    ctx.cfg.gamma = spec.lo;
  if (spec.variable == photon::SweepVariable::Rabi &&
      !ctx.cfg.rabi.has_value())
    ctx.cfg.rabi = spec.lo;
  spec.fixed = photon::resolve_params(ctx.cfg);

  const photon::SweepTable table = photon::run_sweep(spec);

  std::filesystem::create_directories(ctx.out_dir);
  const std::string csv_path = ctx.out_dir + "/sweep.csv";
  {
    std::ofstream out = open_out(csv_path);
    out << photon::to_string(spec.variable);
    for (photon::Engine e : spec.engines)
      out << ",rate_" << photon::to_string(e);
    out << "\n";
    std::set<std::string> seen;
    for (const photon::SweepRow& row : table.rows) {
      out << format_sig12(row.value);
      for (std::size_t j = 0; j < row.cells.size(); ++j) {
        const photon::SweepCell& cell = row.cells[j];
        out << ",";
        if (cell.error.empty()) out << format_sig12(cell.rate);
        else
          std::cerr << "error: " << photon::to_string(spec.variable) << " = "
                    << format_sig12(row.value) << ", "
                    << photon::to_string(spec.engines[j]) << ": "
                    << cell.error << "\n";
        for (const std::string& w : cell.warnings)
          if (seen.insert(photon::to_string(spec.engines[j]) + ": " + w)
                  .second)
            std::cerr << "warning: " << photon::to_string(spec.engines[j])
                      << ": " << w << "\n";
      }
      out << "\n";
    }
  }
  const std::string man_path = ctx.out_dir + "/sweep.manifest.json";
  write_run_manifest(ctx, spec.fixed, {csv_path}, man_path);
  std::cout << "wrote " << csv_path << "\n" << "wrote " << man_path << "\n";
  return 0;
}

int run_extrema(const ToolContext& ctx, std::optional<double> gamma_flag,
                double lo, double hi) {
  double gamma = 0.0;
  if (gamma_flag.has_value()) gamma = *gamma_flag;
  else if (ctx.cfg.gamma.has_value()) gamma = *ctx.cfg.gamma;
  else
    throw photon::ConfigParse("extrema: no decay rate given (use --gamma)",
                              -1, -1, "gamma");

  const std::vector<photon::ExtremumRecord> recs =
      photon::find_extrema(gamma, lo, hi);
  std::cout << "gamma = " << format_sig12(gamma) << ", xi in ["
            << format_sig12(lo) << ", " << format_sig12(hi) << "]: "
            << recs.size() << " extrema\n";
  for (const photon::ExtremumRecord& r : recs)
    std::cout << "  xi* = " << format_sig12(r.xi_star) << "  "
              << (r.kind == photon::ExtremumKind::Maximum ? "maximum"
                                                          : "minimum")
              << "  n = " << r.n << "\n";

  if (ctx.out_dir_set) {
    std::filesystem::create_directories(ctx.out_dir);
    const std::string csv_path = ctx.out_dir + "/extrema.csv";
    std::ofstream out = open_out(csv_path);
    out << "xi_star,kind,n,gamma\n";
    for (const photon::ExtremumRecord& r : recs)
      out << format_sig12(r.xi_star) << ","
          << (r.kind == photon::ExtremumKind::Maximum ? "maximum"
                                                      : "minimum")
          << "," << r.n << "," << format_sig12(r.gamma) << "\n";
    std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

int run_critical(int n) {
  const photon::CriticalPointDetail d = photon::find_critical_point_detail(n);
  const photon::ExponentFit fit = photon::critical_exponent_fit(n);
  std::cout << "n = " << n << "\n"
            << "gamma_cr = " << format_sig12(d.point.gamma_cr) << "\n"
            << "xi_cr = " << format_sig12(d.point.xi_cr) << "\n"
            << "branch merge gammas: max-branch "
            << format_sig12(d.gamma_merge_max) << ", min-branch "
            << format_sig12(d.gamma_merge_min) << "\n"
            << "fold residuals: |dS/dxi| = " << format_sig12(d.resid_s1)
            << ", |d2S/dxi2| = " << format_sig12(d.resid_s2) << "\n"
            << "approach exponent beta = " << format_sig12(fit.beta)
            << " +- " << format_sig12(fit.ci_half_width)
            << " (gamma window [" << format_sig12(fit.window_lo) << ", "
            << format_sig12(fit.window_hi) << "], fit rms "
            << format_sig12(fit.residual_rms) << ", " << fit.n_points
            << " points)\n";
  return 0;
}

int run_figure(const ToolContext& ctx, int id) {
  const std::vector<std::string> files =
      photon::emit_figure_data(id, ctx.out_dir, ctx.jobs, ctx.tol);
  for (const std::string& f : files) std::cout << "wrote " << f << "\n";
  return 0;
}

int run_validate(const ToolContext& ctx, const std::string& spot_path,
                 const std::vector<int>& only) {
  photon::AcceptanceOptions opt;
  opt.jobs = ctx.jobs;
  opt.seed = ctx.seed;
  opt.only = only;
  if (!spot_path.empty())
    opt.spot_check = photon::resolve_params(photon::parse_config(spot_path));
  else if (ctx.cfg.gamma.has_value() && ctx.cfg.rabi.has_value())
    opt.spot_check = photon::resolve_params(ctx.cfg);

  const photon::AcceptanceReport report = photon::run_acceptance(
      opt, [](const photon::CriterionResult& c) {
        const char* tag =
            c.id == 0 ? "[INFO]" : (c.pass ? "[PASS]" : "[FAIL]");
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.1fs", c.elapsed_seconds);
        std::cout << tag << " criterion " << c.id << ": " << c.name << " ("
                  << timing << ")\n";
        for (const std::string& d : c.details) std::cout << "  " << d << "\n";
        std::cout.flush();
      });
  return report.all_pass ? 0 : 1;
}

int run_sample(const ToolContext& ctx, long long n) {
  if (n < 1) throw std::invalid_argument("sample: --n must be positive");
  const photon::ScaledParams p = photon::resolve_params(ctx.cfg);
  photon::WaitingTimeOptions opt;
  opt.tol = ctx.tol;
  if (ctx.cfg.tail.has_value()) opt.tail = *ctx.cfg.tail;
  const std::vector<double> samples = photon::sample_waiting_times(
      p, static_cast<std::size_t>(n), ctx.seed, opt);

  std::filesystem::create_directories(ctx.out_dir);
  const std::string csv_path = ctx.out_dir + "/samples.csv";
  {
    std::ofstream out = open_out(csv_path);
    out << "tau\n";
    for (double s : samples) out << format_sig12(s) << "\n";
  }
  const std::string man_path = ctx.out_dir + "/samples.manifest.json";
  write_run_manifest(ctx, p, {csv_path}, man_path);
  std::cout << "wrote " << csv_path << "\n" << "wrote " << man_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "first-photon waiting-time statistics of a laser-driven molecule "
      "under rf modulation",
      "photon-window"};
  app.set_version_flag("--version", photon::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  double o_gamma = 0.0, o_rabi = 0.0, o_xi = 0.0, o_delta = 0.0,
         o_tol = 1e-9;
  unsigned long long o_seed = 20260816ULL;
  int o_jobs = 0;
  std::string o_out_dir;
  std::vector<std::string> o_engines;

  auto* opt_config =
      app.add_option("--config", config_path, "JSON run configuration file");
  auto* opt_gamma =
      app.add_option("--gamma", o_gamma, "radiative decay rate (rf units)");
  auto* opt_rabi =
      app.add_option("--rabi", o_rabi, "laser coupling (rf units)");
  auto* opt_xi = app.add_option("--xi", o_xi, "modulation index v_e - v_g");
  auto* opt_delta =
      app.add_option("--delta", o_delta, "laser detuning (rf units)");
  auto* opt_engine = app.add_option(
      "--engine", o_engines,
      "rate engine(s): ode, rg_weak, rg_detuned, rg_strong, bloch");
  auto* opt_out = app.add_option("--out-dir", o_out_dir, "output directory");
  auto* opt_seed = app.add_option("--seed", o_seed, "random seed");
  auto* opt_tol =
      app.add_option("--tol", o_tol, "integrator relative tolerance");
  auto* opt_jobs = app.add_option(
      "--jobs", o_jobs, "worker threads (0 = all cores; the "
                        "PHOTON_WINDOW_JOBS environment variable wins)");

  // --- simulate ---
  CLI::App* sim = app.add_subcommand(
      "simulate", "integrate the no-emission wavefunction, write a "
                  "trajectory CSV");
  double sim_t_end = 100.0;
  long long sim_samples = 2001;
  std::string sim_basis = "direct";
  auto* sim_opt_tend =
      sim->add_option("--t-end", sim_t_end, "end time (rf phase units)");
  auto* sim_opt_samples =
      sim->add_option("--samples", sim_samples, "number of sample times");
  sim->add_option("--basis", sim_basis,
                  "integration variables: direct, weak, strong or auto")
      ->check(CLI::IsMember({"direct", "weak", "strong", "auto"}));

  // --- sweep ---
  CLI::App* swp = app.add_subcommand(
      "sweep", "emission rate on a parameter grid, one column per engine");
  std::string swp_variable;
  double swp_lo = 0.0, swp_hi = 0.0, swp_step = 0.0;
  auto* swp_opt_var = swp->add_option("--variable", swp_variable,
                                      "swept parameter: xi, gamma, delta or "
                                      "rabi");
  auto* swp_opt_lo = swp->add_option("--lo", swp_lo, "grid start");
  auto* swp_opt_hi = swp->add_option("--hi", swp_hi, "grid end");
  auto* swp_opt_step = swp->add_option("--step", swp_step, "grid step");

  // --- extrema ---
  CLI::App* ext = app.add_subcommand(
      "extrema", "locate the maxima and minima of the closed-form <tau>(xi)");
  double ext_gamma = 0.0, ext_lo = 0.0, ext_hi = 10.0;
  auto* ext_opt_gamma =
      ext->add_option("--gamma", ext_gamma, "decay rate (rf units)");
  ext->add_option("--lo", ext_lo, "xi interval start");
  ext->add_option("--hi", ext_hi, "xi interval end");

  // --- critical ---
  CLI::App* cri = app.add_subcommand(
      "critical", "fold point where the n-th max-min pair annihilates");
  int cri_n = 1;
  cri->add_option("--n", cri_n, "branch index (1 = first J_0 zero)");

  // --- figure ---
  CLI::App* fig =
      app.add_subcommand("figure", "emit one of the canned data sets");
  int fig_id = 0;
  fig->add_option("id", fig_id, "data set id (1-4)")->required();

  // --- validate ---
  CLI::App* val = app.add_subcommand(
      "validate", "run the numbered validation criteria");
  std::string val_spot;
  std::vector<int> val_only;
  val->add_option("config", val_spot,
                  "optional JSON config for an informational spot check");
  val->add_option("--only", val_only, "run only these criterion ids");

  // --- sample ---
  CLI::App* smp = app.add_subcommand(
      "sample", "draw first-emission waiting times from the survival curve");
  long long smp_n = 10000;
  auto* smp_opt_n = smp->add_option("--n", smp_n, "number of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ToolContext ctx;
    if (opt_config->count()) ctx.cfg = photon::parse_config(config_path);
    if (opt_gamma->count()) ctx.cfg.gamma = o_gamma;
    if (opt_rabi->count()) ctx.cfg.rabi = o_rabi;
    if (opt_xi->count()) {
      ctx.cfg.xi = o_xi;
      ctx.cfg.v_g.reset();
      ctx.cfg.v_e.reset();
    }
    if (opt_delta->count()) ctx.cfg.detuning = o_delta;
    if (opt_seed->count()) ctx.cfg.seed = o_seed;
    if (opt_tol->count()) ctx.cfg.tol = o_tol;
    if (opt_jobs->count()) ctx.cfg.jobs = o_jobs;
    if (opt_out->count()) ctx.cfg.out_dir = o_out_dir;

    ctx.tol = ctx.cfg.tol.value_or(1e-9);
    ctx.seed = ctx.cfg.seed.value_or(20260816ULL);
    ctx.jobs = ctx.cfg.jobs.value_or(0);
    if (const char* env = std::getenv("PHOTON_WINDOW_JOBS"))
      ctx.jobs = std::atoi(env);
    ctx.out_dir_set = ctx.cfg.out_dir.has_value();
    ctx.out_dir = ctx.cfg.out_dir.value_or(".");
    for (int i = 0; i < argc; ++i) {
      if (i) ctx.command += ' ';
      ctx.command += argv[i];
    }

    if (sim->parsed()) {
      if (!sim_opt_tend->count() && ctx.cfg.t_end.has_value())
        sim_t_end = *ctx.cfg.t_end;
      if (!sim_opt_samples->count() && ctx.cfg.n_samples.has_value())
        sim_samples = *ctx.cfg.n_samples;
      return run_simulate(ctx, sim_t_end, sim_samples, sim_basis);
    }
    if (swp->parsed()) {
      return run_sweep_cmd(
          ctx, swp_opt_var->count() ? swp_variable : std::string{},
          swp_opt_lo->count() ? std::optional<double>(swp_lo) : std::nullopt,
          swp_opt_hi->count() ? std::optional<double>(swp_hi) : std::nullopt,
          swp_opt_step->count() ? std::optional<double>(swp_step)
                                : std::nullopt,
          opt_engine->count() ? o_engines : std::vector<std::string>{});
    }
    if (ext->parsed())
      return run_extrema(ctx,
                         ext_opt_gamma->count()
                             ? std::optional<double>(ext_gamma)
                             : std::nullopt,
                         ext_lo, ext_hi);
    if (cri->parsed()) return run_critical(cri_n);
    if (fig->parsed()) return run_figure(ctx, fig_id);
    if (val->parsed()) return run_validate(ctx, val_spot, val_only);
    if (smp->parsed()) {
      if (!smp_opt_n->count() && ctx.cfg.n.has_value()) smp_n = *ctx.cfg.n;
      return run_sample(ctx, smp_n);
    }
    return 0;
  } catch (const photon::ConfigParse& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const photon::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
