"""Delay of the signal filter that flattens the phase of the receiver correlation."""

import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize_scalar

from .dynamics import correlation_profile
from .errors import UnsupportedConfigurationError
from .filters import FilterSpec
from .illumination import filtered_correlation, receiver_moments, snr_from_moments
from .quadrature import DEFAULT_TOL, integrate_adaptive

DEFAULT_SCAN = (0.0, 20.0, 2000)
FD_STEP = 1e-6


class ScanBoundaryWarning(UserWarning):
    """The scanned optimum sits on the edge of the scan interval."""


@dataclass(frozen=True)
class DelayResult:
    t_analytic: float
    t_numeric: float
    snr_at_analytic: float
    snr_at_numeric: float
    snr_at_zero: float


def _require_symmetric(params):
    if not np.isclose(params.g1, params.g2, rtol=1e-12, atol=0):
        raise UnsupportedConfigurationError(
            f"the closed-form delay assumes C1 = C2 (got C1 = {params.c1:.6g}, C2 = {params.c2:.6g})"
        )
    if params.n_plus_in != 0 or params.n_minus_in != 0:
        raise UnsupportedConfigurationError("the closed-form delay assumes vacuum cavity inputs")


def optimal_delay_analytic(params):
    """Small-bandwidth optimal delay for ``C1 = C2 = C``.

    ``(1/gamma) [2/(1 + 4 (delta/gamma)^2) + 4 gamma/kappa
    + (n_b + 1/2 + C) / ((n_b + 1/2 + C)^2 + (delta/gamma)^2)]``
    """
    _require_symmetric(params)
    g = params.gamma
    r = params.delta / g
    s = params.n_b + 0.5 + params.c1
    return (2 / (1 + 4 * r**2) + 4 * g / params.kappa + s / (s**2 + r**2)) / g


def phase_derivative_check(params, step=FD_STEP):
    """``d arg(B x)/dw`` at ``w = 0`` by Richardson-extrapolated central differences.

    Independent check of :func:`optimal_delay_analytic`; ``step`` is in units of kappa.
    """
    _require_symmetric(params)
    h = step * params.kappa

    def central(hh):
        ratio = correlation_profile(params, hh) / correlation_profile(params, -hh)
        return np.angle(ratio) / (2 * hh)

    return float((4 * central(h / 2) - central(h)) / 3)


def _scan_argmax(objective, scan):
    t_min, t_max, points = scan
    grid = np.linspace(t_min, t_max, int(points))
    values = np.array([objective(t) for t in grid])
    i = int(np.argmax(values))
    if i == 0 or i == grid.size - 1:
        warnings.warn(
            f"delay optimum at scan boundary t = {grid[i]:.6g}; widen the scan interval",
            ScanBoundaryWarning, stacklevel=3,
        )
        return float(grid[i])
    res = minimize_scalar(
        lambda t: -objective(t), bracket=(grid[i - 1], grid[i], grid[i + 1]),
        method="golden", tol=1e-6,
    )
    if res.fun <= -values[i]:
        return float(res.x)
    return float(grid[i])


def optimal_delay_numeric(params, illum, sigma, scan=DEFAULT_SCAN, tol=DEFAULT_TOL,
                          objective="snr"):
    """Delay maximizing the QI signal-to-noise ratio over a scan grid, then golden-section refined.

    ``objective="magnitude"`` maximizes ``|<B a+_f a-_f>|`` instead, i.e. pure
    phase flattening without regard to the global phase of the correlation.
    """
    if not sigma > 0:
        raise ValueError("numeric delay optimization needs sigma > 0")
    base = receiver_moments(params, illum, FilterSpec(sigma, 0.0), tol)

    def corr(t):
        return filtered_correlation(params, FilterSpec(sigma, t), tol)

    if objective == "snr":
        def f(t):
            return snr_from_moments(replace(base, corr=corr(t)), illum.eta, illum.m_pairs)
    elif objective == "magnitude":
        def f(t):
            return abs(corr(t))
    else:
        raise ValueError(f"unknown objective {objective!r}")
    return _scan_argmax(f, scan)


def delay_for_profile(profile, sigma, scan=DEFAULT_SCAN, tol=DEFAULT_TOL):
    """Phase-flattening delay for an arbitrary correlation profile ``profile(w)``."""
    def f(t):
        res = integrate_adaptive(lambda w: np.exp(-1j * w * t) * profile(w),
                                 -sigma / 2, sigma / 2, tol=tol)
        return abs(res.value)

    return _scan_argmax(f, scan)


def optimize_delay(params, illum, sigma, scan=DEFAULT_SCAN, tol=DEFAULT_TOL):
    """Compare the closed-form and numerically optimized delays at bandwidth ``sigma``."""
    t_a = optimal_delay_analytic(params)
    t_n = optimal_delay_numeric(params, illum, sigma, scan, tol)
    base = receiver_moments(params, illum, FilterSpec(sigma, 0.0), tol)

    def snr_at(t):
        c = filtered_correlation(params, FilterSpec(sigma, t), tol)
        return float(snr_from_moments(replace(base, corr=c), illum.eta, illum.m_pairs))

    return DelayResult(t_a, t_n, snr_at(t_a), snr_at(t_n), snr_at(0.0))
