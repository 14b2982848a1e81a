"""Frequency-domain solution of the linearized Langevin equations.

Fourier convention: ``O[w] = int O(t) exp(i w t) dt`` so that ``d/dt -> -i w``.
Input-output relation: ``O_out = sqrt(rate) * O + O_in``.

With ``Dc = kappa/2 - i w``, ``Dm = gamma/2 + i (delta - w)`` and
``Delta = 4 Dc Dm + G1**2 - G2**2`` the outputs read::

    a+_out[w]  = A+ a+_in[w] - B a-_in^dag[-w] + C+ b_in[w]
    a-_out[-w] = B* a+_in^dag[w] + A- a-_in[-w] + C- b_in^dag[w]

All functions broadcast over ``omega``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularityError, UnsupportedConfigurationError
from .params import validate

SINGULAR_TOL = 1e-14


@dataclass(frozen=True)
class ScatteringCoefficients:
    omega: np.ndarray
    a_plus: np.ndarray
    b: np.ndarray
    c_plus: np.ndarray
    a_minus: np.ndarray
    c_minus: np.ndarray

    def commutator_plus(self):
        """``|A+|^2 - |B|^2 + |C+|^2``, identically one for a unitary response."""
        return abs(self.a_plus) ** 2 - abs(self.b) ** 2 + abs(self.c_plus) ** 2

    def commutator_minus(self):
        return abs(self.a_minus) ** 2 - abs(self.b) ** 2 - abs(self.c_minus) ** 2


@dataclass(frozen=True)
class SpectralPoint:
    """Output densities ``n+[w]``, ``n-[w]`` and cross-correlation ``x[w]``."""

    omega: np.ndarray
    n_plus: np.ndarray
    n_minus: np.ndarray
    x: np.ndarray


def _denominators(params, omega):
    w = np.asarray(omega, dtype=float)
    dc = params.kappa / 2 - 1j * w
    dm = params.gamma / 2 + 1j * (params.delta - w)
    det = 4 * dc * dm + params.g1**2 - params.g2**2
    if np.any(np.abs(det) < SINGULAR_TOL * params.kappa**2):
        raise SingularityError(
            "linear response is singular (|Delta| ~ 0): parametric instability, "
            "reduce G2 relative to G1"
        )
    return w, dc, dm, det


def stability_margin(params):
    """Largest real part of the response poles in the Laplace variable ``s = -i w``.

    The cavity poles sit at ``-kappa/2``; the remaining pair solves
    ``4 (kappa/2 + s)(gamma/2 + i delta + s) + G1^2 - G2^2 = 0``. A steady
    state exists only when the margin is negative.
    """
    k, g, d = params.kappa, params.gamma, params.delta
    roots = np.roots([4.0, 4 * (k / 2 + g / 2 + 1j * d),
                      4 * (k / 2) * (g / 2 + 1j * d) + params.g1**2 - params.g2**2])
    return float(max(roots.real.max(), -k / 2))


def is_stable(params):
    return stability_margin(params) < 0


def scattering_coefficients(params, omega):
    """Input-output amplitudes ``A+, B, C+, A-, C-`` at ``omega``."""
    validate(params)
    w, dc, dm, det = _denominators(params, omega)
    k, g1, g2 = params.kappa, params.g1, params.g2
    root = np.sqrt(k * params.gamma)
    a_plus = 1 - k * (4 * dc * dm - g2**2) / (dc * det)
    b = -k * g1 * g2 / (dc * det)
    c_plus = -2j * root * g1 / det
    a_minus = np.conj(1 - k * (4 * dc * dm + g1**2) / (dc * det))
    c_minus = np.conj(2j * root * g2 / det)
    return ScatteringCoefficients(w, a_plus, b, c_plus, a_minus, c_minus)


def output_spectra(params, omega):
    """Output densities for thermal inputs of arbitrary occupancy."""
    s = scattering_coefficients(params, omega)
    np_in, nm_in, nb = params.n_plus_in, params.n_minus_in, params.n_b
    b2 = abs(s.b) ** 2
    n_plus = abs(s.a_plus) ** 2 * np_in + b2 * (1 + nm_in) + abs(s.c_plus) ** 2 * nb
    n_minus = b2 * (1 + np_in) + abs(s.a_minus) ** 2 * nm_in + abs(s.c_minus) ** 2 * (1 + nb)
    x = (
        s.a_plus * np.conj(s.b) * (1 + np_in)
        - s.b * s.a_minus * nm_in
        + s.c_plus * s.c_minus * (1 + nb)
    )
    return SpectralPoint(s.omega, n_plus, n_minus, x)


def correlation_profile(params, omega):
    """``B[w] * x[w]``: the idler/return correlation seen by the receiver per unit sqrt(eta).

    For vacuum cavity inputs this is ``A+ |B|^2 + C+ C- B (n_b + 1)``.
    """
    s = scattering_coefficients(params, omega)
    sp = output_spectra(params, omega)
    return s.b * sp.x


def closed_form_spectra(params, omega):
    """Direct evaluation of the closed-form spectra (vacuum cavity inputs only).

    Kept deliberately independent of :func:`scattering_coefficients` so it can
    act as a cross-check.
    """
    if params.n_plus_in != 0 or params.n_minus_in != 0:
        raise UnsupportedConfigurationError(
            "closed-form spectra assume vacuum cavity inputs (n_plus_in = n_minus_in = 0)"
        )
    validate(params)
    w = np.asarray(omega, dtype=float)
    k, g, d, nb = params.kappa, params.gamma, params.delta, params.n_b
    g1, g2 = params.g1, params.g2

    den = g1**2 - g2**2 + (g + 2j * (d - w)) * (k - 2j * w)
    den_c = g1**2 - g2**2 + (g - 2j * (d - w)) * (k + 2j * w)
    if np.any(np.abs(den) < SINGULAR_TOL * k**2):
        raise SingularityError("closed-form denominator vanishes")
    squeeze = 4 * (g1 * g2 * k) ** 2 / np.abs(den * (k - 2j * w)) ** 2
    n_plus = 4 * nb * g1**2 * g * k / np.abs(den) ** 2 + squeeze
    n_minus = 4 * (1 + nb) * g2**2 * g * k / np.abs(den) ** 2 + squeeze
    num = (
        g1**2 * (k - 2j * w)
        + (k + 2j * w) * (g2**2 - (g + 2j * (d - w)) * (k - 2j * w))
        + 2 * (1 + nb) * g * (k**2 + 4 * w**2)
    )
    x = -2 * g1 * g2 * k * num / (den * den_c * (k**2 + 4 * w**2))
    return SpectralPoint(w, n_plus, n_minus, x)
