"""Logarithmic negativity of the two-mode signal/idler Gaussian state."""

from dataclasses import dataclass

import numpy as np

from .dynamics import output_spectra
from .errors import ParameterError
from .filters import CovarianceMatrix

RATIO_FLOOR = 1e-15
# 2 eta_minus this close to 1 is a separable state up to round-off
SEPARABLE_SLACK = 1e-12


@dataclass(frozen=True)
class EntanglementPoint:
    omega: float
    e_n: float
    ratio: float | None  # E_N / n+, None where n+ is negligible


def pt_symplectic_eigenvalue(v, check=True):
    """Smallest symplectic eigenvalue of the partially transposed covariance matrix.

    Uses the invariants ``Sigma~ = a^2 + b^2 + 2 |c|^2`` and
    ``det V = (a b - |c|^2)^2`` of the (untransposed) matrix. Broadcasts over array-valued
    covariance entries.
    """
    if check and not v.is_physical():
        raise ParameterError("covariance matrix violates the uncertainty principle", "v")
    a, b, c2, det_v = v.invariants()
    sigma_pt = a**2 + b**2 + 2 * c2
    # sigma_pt^2 - 4 det V in factored form
    disc = (a + b) * np.sqrt((a - b) ** 2 + 4 * c2)
    # (S - sqrt(S^2 - 4D))/2 == 2D / (S + sqrt(S^2 - 4D)); the latter avoids cancellation
    eta_minus = np.sqrt(2 * det_v / (sigma_pt + disc))
    return eta_minus[()] if np.ndim(eta_minus) == 0 else eta_minus


def log_negativity(v, check=True):
    """``max(0, -log2(2 eta_minus))``."""
    eta_minus = pt_symplectic_eigenvalue(v, check=check)
    two_eta = 2 * eta_minus
    e_n = np.where(two_eta >= 1 - SEPARABLE_SLACK, 0.0, -np.log2(two_eta))
    return e_n[()] if np.ndim(e_n) == 0 else e_n


def en_spectrum(params, omegas):
    """Per-frequency entanglement of the transmitter output.

    Each frequency is treated as its own two-mode Gaussian state with
    ``V11 = n+[w]``, ``V33 = n-[w]`` and ``V13 + i V14 = x[w]``.
    """
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    sp = output_spectra(params, omegas)
    cm = CovarianceMatrix.from_moments(sp.n_plus, sp.n_minus, sp.x)
    e_n = np.atleast_1d(log_negativity(cm))
    points = []
    for w, e, n in zip(omegas, e_n, np.atleast_1d(sp.n_plus)):
        ratio = float(e / n) if n > RATIO_FLOOR else None
        points.append(EntanglementPoint(float(w), float(e), ratio))
    return points
