"""Smoke test for the python package: imports, a few anchored numbers, and
the exception mapping.  Runs with a bare interpreter (no pytest) so ctest can
call it directly."""

import math
import sys

import photon_window as pw


def check_version():
    assert pw.__version__ == "0.1.0", pw.__version__


def check_regime_strings():
    assert pw.classify_regime(pw.ScaledParams.from_xi(1.0, 0.5, 0.1)) == "weak-drive"
    assert (
        pw.classify_regime(pw.ScaledParams.from_xi(1.14, 1.0 / 7.0, 0.457))
        == "strong-drive"
    )
    assert pw.classify_regime(pw.ScaledParams.from_xi(1.0, 0.8, 0.5)) == "outside"


def check_series_layer():
    row = pw.bessel_row(1.0, 10)
    assert len(row) == 11
    # Squared-sum normalization of the sideband weights.
    q = row[0] ** 2 + 2.0 * sum(v * v for v in row[1:])
    assert abs(q - 1.0) < 1e-10, q
    # The zero tables and the series agree.
    z1 = pw.bessel_j0_zero(1)
    assert abs(pw.bessel_row(z1, 1)[0]) < 1e-12
    # Unmodulated limit collapses to a single Lorentzian, exactly.
    assert pw.lorentz_sum(0.0, 0.7, 0.0) == 1.0 / (0.7 * 0.7)


def check_closed_form_rates():
    r = pw.mean_tau_rg(1.0, 0.5, 0.1)
    assert math.isclose(r.tau(), 82.1394670022, rel_tol=1e-9), r.tau()
    assert r.regime == "weak-drive"
    assert r.validity_warnings == []
    # The fitted-exponential view of the same prediction: rate = 2 zeta.
    z = pw.decay_constant(1.0, 0.5, 0.1)
    assert 2.0 * z == r.inverse_tau
    # Detuned form at zero detuning is the resonant form.
    d = pw.mean_tau_rg_detuned(1.0, 0.5, 0.1, 0.0)
    assert d.inverse_tau == r.inverse_tau


def check_quadrature_tau():
    w = pw.mean_waiting_time(pw.ScaledParams.from_xi(1.0, 0.5, 0.1))
    assert w.tail_fit_ok
    assert math.isclose(w.tau, 86.1119422768, rel_tol=1e-6), w.tau


def check_trajectory():
    traj = pw.evolve(pw.ScaledParams.from_xi(1.0, 0.5, 0.1), 50.0, n_samples=201)
    assert len(traj.times) == 201 == len(traj.survival)
    assert traj.survival[0] == 1.0
    assert traj.psi_g[0] == 1.0 + 0.0j and traj.psi_e[0] == 0.0 + 0.0j
    for a, b in zip(traj.survival, traj.survival[1:]):
        assert b <= a + 1e-12, (a, b)


def check_resonance_layer():
    recs = pw.find_extrema(1.0, 2.0, 7.2)
    assert [r.kind for r in recs] == ["maximum", "minimum", "maximum", "minimum"]
    assert math.isclose(recs[0].xi_star, 2.58609061533, rel_tol=1e-6)
    assert recs[0].n == 1 and recs[2].n == 2
    cp = pw.find_critical_point(1)
    assert math.isclose(cp.gamma_cr, 1.70850040127, rel_tol=1e-6)
    assert math.isclose(cp.xi_cr, 3.27573880647, rel_tol=1e-6)


def check_bloch_reference():
    g, om = 0.5, 0.1
    ss = pw.steady_state_population(g, om, 0.0)
    want = (om * om / 4.0) / (g * g / 4.0 + om * om / 2.0)
    assert math.isclose(ss, want, rel_tol=1e-12)


def check_sampler_determinism():
    p = pw.ScaledParams.from_xi(1.0, 0.5, 0.1)
    s1 = pw.sample_waiting_times(p, 64, 42)
    s2 = pw.sample_waiting_times(p, 64, 42)
    s3 = pw.sample_waiting_times(p, 64, 43)
    assert s1 == s2
    assert s1 != s3
    assert all(t >= 0.0 for t in s1)


def check_exception_mapping():
    # Problem-level failures arrive as photon_window.Error ...
    try:
        pw.mean_tau_rg(1.0, 0.0, 0.1)
    except pw.Error:
        pass
    else:
        raise AssertionError("gamma = 0 should raise photon_window.Error")
    # ... and argument misuse as the usual ValueError.
    try:
        pw.ScaledParams(gamma=-1.0, rabi=0.1)
    except ValueError:
        pass
    else:
        raise AssertionError("negative gamma should raise ValueError")
    try:
        pw.find_extrema(1.0, 5.0, 2.0)
    except ValueError:
        pass
    else:
        raise AssertionError("inverted interval should raise ValueError")


CHECKS = [
    check_version,
    check_regime_strings,
    check_series_layer,
    check_closed_form_rates,
    check_quadrature_tau,
    check_trajectory,
    check_resonance_layer,
    check_bloch_reference,
    check_sampler_determinism,
    check_exception_mapping,
]


def main():
    for check in CHECKS:
        check()
        print(f"ok {check.__name__}")
    print(f"{len(CHECKS)} checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
