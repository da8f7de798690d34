"""Range-based volatility estimation and ABM range distributions."""

from rangevol._core import (  # noqa: F401
    bs_call,
    detect_signal,
    estimate,
    expected_range,
    h_moment,
    half_range_density,
    half_range_mean,
    joint_density_max_min,
    range_density,
    range_density_quadrature,
    simulate_ohlc,
    simulate_ranges,
    solve_intraday_vol,
    InfeasibleMomentsError,
)

__all__ = [
    "bs_call",
    "detect_signal",
    "estimate",
    "expected_range",
    "h_moment",
    "half_range_density",
    "half_range_mean",
    "joint_density_max_min",
    "range_density",
    "range_density_quadrature",
    "simulate_ohlc",
    "simulate_ranges",
    "solve_intraday_vol",
    "InfeasibleMomentsError",
]
