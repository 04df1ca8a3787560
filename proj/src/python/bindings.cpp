#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "photon/acceptance.hpp"
#include "photon/bessel.hpp"
#include "photon/bloch.hpp"
#include "photon/dynamics.hpp"
#include "photon/errors.hpp"
#include "photon/figures.hpp"
#include "photon/params.hpp"
#include "photon/resonance.hpp"
#include "photon/rg.hpp"
#include "photon/version.hpp"

namespace py = pybind11;

namespace {

std::string kind_name(photon::ExtremumKind k) {
  return k == photon::ExtremumKind::Maximum ? "maximum" : "minimum";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "First-photon waiting-time statistics of a laser-driven molecule "
      "under rf modulation";
  m.attr("__version__") = photon::kVersion;

  // Library-level failures surface as photon_window.Error; argument misuse
  // arrives as the usual ValueError via std::invalid_argument.
  py::register_exception<photon::Error>(m, "Error");

  py::class_<photon::ScaledParams>(m, "ScaledParams")
      .def(py::init([](double gamma, double rabi, double detuning, double v_g,
                       double v_e) {
             photon::ScaledParams p{gamma, rabi, detuning, v_g, v_e};
             photon::validate(p);
             return p;
           }),
           py::arg("gamma"), py::arg("rabi"), py::arg("detuning") = 0.0,
           py::arg("v_g") = 0.0, py::arg("v_e") = 0.0)
      .def_readwrite("gamma", &photon::ScaledParams::gamma)
      .def_readwrite("rabi", &photon::ScaledParams::rabi)
      .def_readwrite("detuning", &photon::ScaledParams::detuning)
      .def_readwrite("v_g", &photon::ScaledParams::v_g)
      .def_readwrite("v_e", &photon::ScaledParams::v_e)
      .def_property_readonly("xi", &photon::ScaledParams::xi)
      .def_static("from_xi", &photon::ScaledParams::from_xi, py::arg("xi"),
                  py::arg("gamma"), py::arg("rabi"), py::arg("detuning") = 0.0)
      .def("__repr__", [](const photon::ScaledParams& p) {
        return "ScaledParams(gamma=" + std::to_string(p.gamma) +
               ", rabi=" + std::to_string(p.rabi) +
               ", detuning=" + std::to_string(p.detuning) +
               ", v_g=" + std::to_string(p.v_g) +
               ", v_e=" + std::to_string(p.v_e) + ")";
      });

  m.def("classify_regime",
        [](const photon::ScaledParams& p) {
          return photon::to_string(photon::classify_regime(p));
        },
        py::arg("params"),
        "Coarse drive-strength classification: weak-drive, strong-drive or "
        "outside");

  // Special-series layer.
  m.def("bessel_row",
        [](double xi, int order) { return photon::bessel_row(xi, order).values; },
        py::arg("xi"), py::arg("order"),
        "J_0(xi) .. J_order(xi); negative orders follow from parity");
  m.def("truncation_order", &photon::truncation_order, py::arg("xi"),
        py::arg("tol"));
  m.def("bessel_j0_zero", &photon::bessel_j0_zero, py::arg("n"));
  m.def("bessel_j1_zero", &photon::bessel_j1_zero, py::arg("n"));
  m.def("lorentz_sum", &photon::lorentz_sum, py::arg("xi"), py::arg("gamma"),
        py::arg("delta"),
        "sum_k J_k(xi)^2 / (gamma^2 + 4 (k - delta)^2)");

  // Closed-form rates.
  py::class_<photon::RatePrediction>(m, "RatePrediction")
      .def_readonly("inverse_tau", &photon::RatePrediction::inverse_tau)
      .def_property_readonly("regime",
                             [](const photon::RatePrediction& r) {
                               return photon::to_string(r.regime);
                             })
      .def_readonly("validity_warnings",
                    &photon::RatePrediction::validity_warnings)
      .def("tau", &photon::RatePrediction::tau)
      .def("__repr__", [](const photon::RatePrediction& r) {
        return "RatePrediction(inverse_tau=" + std::to_string(r.inverse_tau) +
               ")";
      });

  m.def("decay_constant", &photon::decay_constant, py::arg("xi"),
        py::arg("gamma"), py::arg("rabi"));
  m.def("mean_tau_rg", &photon::mean_tau_rg, py::arg("xi"), py::arg("gamma"),
        py::arg("rabi"));
  m.def("mean_tau_rg_detuned", &photon::mean_tau_rg_detuned, py::arg("xi"),
        py::arg("gamma"), py::arg("rabi"), py::arg("delta"));
  m.def("emission_rate_strong_drive", &photon::emission_rate_strong_drive,
        py::arg("xi"), py::arg("gamma"), py::arg("rabi"), py::arg("delta"));

  // Conditional-evolution layer.
  py::class_<photon::Trajectory>(m, "Trajectory")
      .def_readonly("times", &photon::Trajectory::times)
      .def_readonly("survival", &photon::Trajectory::survival)
      .def_property_readonly("psi_g",
                             [](const photon::Trajectory& t) {
                               std::vector<std::complex<double>> v;
                               v.reserve(t.states.size());
                               for (const auto& s : t.states)
                                 v.push_back(s.psi_g);
                               return v;
                             })
      .def_property_readonly("psi_e", [](const photon::Trajectory& t) {
        std::vector<std::complex<double>> v;
        v.reserve(t.states.size());
        for (const auto& s : t.states) v.push_back(s.psi_e);
        return v;
      });

  m.def("evolve", &photon::evolve, py::arg("params"), py::arg("t_end"),
        py::arg("tol") = 1e-9, py::arg("n_samples") = 2001,
        py::call_guard<py::gil_scoped_release>(),
        "Integrate the no-emission wavefunction from the ground state");

  py::class_<photon::WaitingTimeResult>(m, "WaitingTimeResult")
      .def_readonly("tau", &photon::WaitingTimeResult::tau)
      .def_readonly("zeta_fit", &photon::WaitingTimeResult::zeta_fit)
      .def_readonly("t_cut", &photon::WaitingTimeResult::t_cut)
      .def_readonly("fit_residual_rms",
                    &photon::WaitingTimeResult::fit_residual_rms)
      .def_readonly("tail_fit_ok", &photon::WaitingTimeResult::tail_fit_ok)
      .def_readonly("warnings", &photon::WaitingTimeResult::warnings)
      .def("__repr__", [](const photon::WaitingTimeResult& w) {
        return "WaitingTimeResult(tau=" + std::to_string(w.tau) + ")";
      });

  m.def("mean_waiting_time",
        [](const photon::ScaledParams& p, double tol) {
          photon::WaitingTimeOptions opt;
          opt.tol = tol;
          return photon::mean_waiting_time(p, opt);
        },
        py::arg("params"), py::arg("tol") = 1e-9,
        py::call_guard<py::gil_scoped_release>(),
        "<tau> by quadrature of the survival probability");

  m.def("sample_waiting_times",
        [](const photon::ScaledParams& p, std::size_t n, std::uint64_t seed) {
          return photon::sample_waiting_times(p, n, seed);
        },
        py::arg("params"), py::arg("n"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>(),
        "Inverse-CDF draws of the first-emission waiting time");

  // Resonance structure.
  py::class_<photon::ExtremumRecord>(m, "ExtremumRecord")
      .def_readonly("xi_star", &photon::ExtremumRecord::xi_star)
      .def_property_readonly("kind",
                             [](const photon::ExtremumRecord& r) {
                               return kind_name(r.kind);
                             })
      .def_readonly("gamma", &photon::ExtremumRecord::gamma)
      .def_readonly("n", &photon::ExtremumRecord::n)
      .def("__repr__", [](const photon::ExtremumRecord& r) {
        return "ExtremumRecord(xi_star=" + std::to_string(r.xi_star) + ", " +
               kind_name(r.kind) + ", n=" + std::to_string(r.n) + ")";
      });

  m.def("find_extrema", &photon::find_extrema, py::arg("gamma"),
        py::arg("xi_lo"), py::arg("xi_hi"),
        py::call_guard<py::gil_scoped_release>());
  m.def("small_gamma_shift", &photon::small_gamma_shift, py::arg("n"),
        py::arg("gamma"));

  py::class_<photon::CriticalPoint>(m, "CriticalPoint")
      .def_readonly("xi_cr", &photon::CriticalPoint::xi_cr)
      .def_readonly("gamma_cr", &photon::CriticalPoint::gamma_cr)
      .def_readonly("n", &photon::CriticalPoint::n)
      .def("__repr__", [](const photon::CriticalPoint& c) {
        return "CriticalPoint(xi_cr=" + std::to_string(c.xi_cr) +
               ", gamma_cr=" + std::to_string(c.gamma_cr) +
               ", n=" + std::to_string(c.n) + ")";
      });

  py::class_<photon::CriticalPointDetail>(m, "CriticalPointDetail")
      .def_readonly("point", &photon::CriticalPointDetail::point)
      .def_readonly("gamma_merge_max",
                    &photon::CriticalPointDetail::gamma_merge_max)
      .def_readonly("gamma_merge_min",
                    &photon::CriticalPointDetail::gamma_merge_min)
      .def_readonly("resid_s1", &photon::CriticalPointDetail::resid_s1)
      .def_readonly("resid_s2", &photon::CriticalPointDetail::resid_s2);

  m.def("find_critical_point", &photon::find_critical_point, py::arg("n"),
        py::call_guard<py::gil_scoped_release>());
  m.def("find_critical_point_detail", &photon::find_critical_point_detail,
        py::arg("n"), py::call_guard<py::gil_scoped_release>());

  py::class_<photon::ExponentFit>(m, "ExponentFit")
      .def_readonly("beta", &photon::ExponentFit::beta)
      .def_readonly("ci_half_width", &photon::ExponentFit::ci_half_width)
      .def_readonly("window_lo", &photon::ExponentFit::window_lo)
      .def_readonly("window_hi", &photon::ExponentFit::window_hi)
      .def_readonly("residual_rms", &photon::ExponentFit::residual_rms)
      .def_readonly("n_points", &photon::ExponentFit::n_points)
      .def("__repr__", [](const photon::ExponentFit& f) {
        return "ExponentFit(beta=" + std::to_string(f.beta) + " +- " +
               std::to_string(f.ci_half_width) + ")";
      });

  m.def("critical_exponent_fit", &photon::critical_exponent_fit, py::arg("n"),
        py::call_guard<py::gil_scoped_release>());

  // Density-matrix reference.
  m.def("steady_state_population", &photon::steady_state_population,
        py::arg("gamma"), py::arg("rabi"), py::arg("delta"));
  m.def("period_averaged_population", &photon::period_averaged_population,
        py::arg("params"), py::arg("tol") = 1e-8,
        py::call_guard<py::gil_scoped_release>());

  // Canned data sets.
  m.def("emit_figure_data", &photon::emit_figure_data, py::arg("id"),
        py::arg("out_dir"), py::arg("jobs") = 0, py::arg("tol") = 1e-9,
        py::call_guard<py::gil_scoped_release>());
}
