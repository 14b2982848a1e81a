"""Wave-packet filters and the filtered two-mode covariance matrix."""

from dataclasses import dataclass

import numpy as np

from .dynamics import output_spectra
from .errors import ParameterError
from .quadrature import DEFAULT_TOL, integrate_adaptive, spectral_breakpoints

MICROWAVE = "microwave"
OPTICAL = "optical"
RECTANGULAR = "rectangular"


@dataclass(frozen=True)
class FilterSpec:
    """Rectangular filter pair of bandwidth ``sigma``.

    The microwave (signal) filter carries the delay phase ``exp(i w t_delay)``.
    ``sigma = 0`` denotes the monochromatic limit, evaluated at ``w = 0``.
    """

    sigma: float = 1.0
    t_delay: float = 0.0
    shape: str = RECTANGULAR

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ParameterError(f"sigma must be >= 0, got {self.sigma}", "sigma")
        if self.shape != RECTANGULAR:
            raise ParameterError(f"unsupported filter shape {self.shape!r}", "shape")

    @property
    def band(self):
        return (-self.sigma / 2, self.sigma / 2)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Second moments ``V11, V33, V13, V14`` of the filtered signal/idler pair.

    Fields may be numpy arrays, in which case the matrix methods broadcast.
    """

    v11: float
    v33: float
    v13: float
    v14: float

    @classmethod
    def from_moments(cls, n_plus, n_minus, corr):
        corr = np.asarray(corr)
        return cls(np.asarray(n_plus), np.asarray(n_minus), corr.real, corr.imag)

    def matrix(self):
        """Assembled ``(..., 4, 4)`` matrix in the ``(x+, p+, x-, p-)`` ordering."""
        v11, v33, v13, v14 = np.broadcast_arrays(
            *(np.asarray(v, dtype=float) for v in (self.v11, self.v33, self.v13, self.v14))
        )
        a = v11 + 0.5
        b = v33 + 0.5
        z = np.zeros_like(a)
        rows = [
            [a, z, v13, v14],
            [z, a, v14, -v13],
            [v13, v14, b, z],
            [v14, -v13, z, b],
        ]
        return np.moveaxis(np.array(rows), (0, 1), (-2, -1))

    def invariants(self):
        """``(a, b, |c|^2, det V)`` with ``det V = (a b - |c|^2)^2`` for this block structure."""
        a = np.asarray(self.v11, dtype=float) + 0.5
        b = np.asarray(self.v33, dtype=float) + 0.5
        c2 = np.asarray(self.v13, dtype=float) ** 2 + np.asarray(self.v14, dtype=float) ** 2
        return a, b, c2, (a * b - c2) ** 2

    def symplectic_eigenvalues(self):
        """Ordinary symplectic eigenvalues ``(nu_minus, nu_plus)``."""
        a, b, c2, det_v = self.invariants()
        seralian = a**2 + b**2 - 2 * c2
        # seralian^2 - 4 det V, factored to survive a ~ b
        disc = np.abs(a - b) * np.sqrt(np.maximum((a + b) ** 2 - 4 * c2, 0.0))
        nu_plus = np.sqrt(np.maximum((seralian + disc) / 2, 0.0))
        with np.errstate(divide="ignore", invalid="ignore"):
            nu_minus = np.sqrt(np.maximum(np.where(
                seralian + disc > 0, 2 * det_v / (seralian + disc), 0.0), 0.0))
        return nu_minus, nu_plus

    def is_physical(self, atol=1e-9):
        nu_minus, _ = self.symplectic_eigenvalues()
        a = np.asarray(self.v11) + 0.5
        return np.all(nu_minus >= 0.5 - atol) & np.all(a > 0)


def filter_amplitude(spec, side, omega):
    """Frequency-domain amplitude of the signal (``"microwave"``) or idler filter."""
    if spec.sigma == 0:
        raise ParameterError(
            "sigma = 0 is the monochromatic limit and has no amplitude; "
            "evaluate the spectra at w = 0 instead", "sigma",
        )
    w = np.asarray(omega, dtype=float)
    inside = np.abs(w) <= spec.sigma / 2
    amp = np.where(inside, 1 / np.sqrt(spec.sigma), 0.0).astype(complex)
    if side == MICROWAVE:
        amp = amp * np.exp(1j * w * spec.t_delay)
    elif side != OPTICAL:
        raise ValueError(f"side must be {MICROWAVE!r} or {OPTICAL!r}, got {side!r}")
    return amp[()] if amp.ndim == 0 else amp


def band_average(params, sigma, integrand, tol=DEFAULT_TOL):
    """``(1/sigma) * int_{-sigma/2}^{sigma/2} integrand(w) dw``; ``integrand(0)`` when sigma = 0."""
    if sigma == 0:
        return complex(np.asarray(integrand(np.zeros(1)))[0])
    band = (-sigma / 2, sigma / 2)
    res = integrate_adaptive(
        integrand, band[0], band[1], tol=tol * sigma,
        breakpoints=spectral_breakpoints(params, band),
    )
    return res.value / sigma


def project_covariance(params, spec, tol=DEFAULT_TOL):
    """Filtered covariance entries of the transmitter output pair."""
    v11 = band_average(params, spec.sigma, lambda w: output_spectra(params, w).n_plus, tol)
    v33 = band_average(params, spec.sigma, lambda w: output_spectra(params, w).n_minus, tol)
    corr = band_average(
        params, spec.sigma,
        lambda w: np.exp(-1j * w * spec.t_delay) * output_spectra(params, w).x, tol,
    )
    return CovarianceMatrix(v11.real, v33.real, corr.real, corr.imag)
