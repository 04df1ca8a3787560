"""First-photon waiting-time statistics of a laser-driven molecule under rf
modulation.

The compiled extension carries all the machinery; this package is a thin
veneer over it.  Parameters are dimensionless throughout: every rate is
measured in units of the rf drive frequency, every time in units of the rf
phase (one drive period = 2*pi).
"""

from ._core import (  # noqa: F401
    CriticalPoint,
    CriticalPointDetail,
    Error,
    ExponentFit,
    ExtremumRecord,
    RatePrediction,
    ScaledParams,
    Trajectory,
    WaitingTimeResult,
    __version__,
    bessel_j0_zero,
    bessel_j1_zero,
    bessel_row,
    classify_regime,
    critical_exponent_fit,
    decay_constant,
    emission_rate_strong_drive,
    emit_figure_data,
    evolve,
    find_critical_point,
    find_critical_point_detail,
    find_extrema,
    lorentz_sum,
    mean_tau_rg,
    mean_tau_rg_detuned,
    mean_waiting_time,
    period_averaged_population,
    sample_waiting_times,
    small_gamma_shift,
    steady_state_population,
    truncation_order,
)
