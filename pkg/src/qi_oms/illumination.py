"""Phase-conjugate receiver, signal-to-noise ratios and error probabilities.

The receiver is a copy of the transmitter (same rates and couplings) with a
vacuum optical input and mechanical occupancy ``n_b``. It converts the
return field into an optical mode ``a_{-eta}``, which is mixed with the
retained idler on a balanced splitter; the photon-count difference of the
two splitter outputs is the decision statistic.

Hypotheses: under H0 the return is pure background of occupancy ``n_B``;
under H1 it is ``sqrt(eta) a+ + sqrt(1-eta) a_B`` with the background mode at
``n_B / (1 - eta)``, i.e. again ``n_B`` thermal photons plus ``eta n+``.
"""

import enum
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import erfc

from .dynamics import correlation_profile, is_stable, output_spectra, scattering_coefficients
from .errors import ParameterError
from .filters import band_average
from .quadrature import DEFAULT_TOL


class Hypothesis(enum.Enum):
    H0 = "H0"  # object absent
    H1 = "H1"  # object present


@dataclass(frozen=True)
class IlluminationReport:
    snr_qi: float
    snr_coh: float
    f_merit: float | None
    p_qi: float
    p_coh: float
    v11: float = float("nan")
    diagnostics: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class ReceiverMoments:
    """Filtered first and second moments entering the SNR.

    ``corr`` is the complex filtered correlation ``<B a+_f a-_f>`` (without
    the ``sqrt(eta)`` factor).
    """

    v11: float
    v33: float
    corr: complex
    n_return_h0: float
    n_return_h1: float


def _receiver_integrand(params, illum, hyp):
    def integrand(w):
        s = scattering_coefficients(params, w)
        n_r = illum.n_B
        if hyp is Hypothesis.H1:
            n_r = illum.eta * output_spectra(params, w).n_plus + illum.n_B
        return abs(s.b) ** 2 * (n_r + 1) + abs(s.c_minus) ** 2 * (params.n_b + 1)
    return integrand


def receiver_output_moment(params, illum, spec, hyp, tol=DEFAULT_TOL):
    """Filtered photon number of the receiver's converted output under ``hyp``."""
    hyp = Hypothesis(hyp)
    integrand = _receiver_integrand(params, illum, hyp)
    return band_average(params, spec.sigma, integrand, tol).real


def filtered_correlation(params, spec, tol=DEFAULT_TOL):
    """``<B a+_f a-_f> = (1/sigma) int exp(-i w t_d) B[w] x[w] dw`` (point value at sigma = 0)."""
    return band_average(
        params, spec.sigma,
        lambda w: np.exp(-1j * w * spec.t_delay) * correlation_profile(params, w), tol,
    )


def receiver_moments(params, illum, spec, tol=DEFAULT_TOL):
    """All filtered moments of one (params, illumination, filter) configuration."""
    v11 = band_average(params, spec.sigma, lambda w: output_spectra(params, w).n_plus, tol).real
    v33 = band_average(params, spec.sigma, lambda w: output_spectra(params, w).n_minus, tol).real
    return ReceiverMoments(
        v11=v11,
        v33=v33,
        corr=filtered_correlation(params, spec, tol),
        n_return_h0=receiver_output_moment(params, illum, spec, Hypothesis.H0, tol),
        n_return_h1=receiver_output_moment(params, illum, spec, Hypothesis.H1, tol),
    )


def mean_photon_difference(params, illum, spec, hyp, tol=DEFAULT_TOL):
    """``<N_c,+> - <N_c,->`` under ``hyp``: zero for H0, ``2 sqrt(eta) Re<B a+_f a-_f>`` for H1."""
    if Hypothesis(hyp) is Hypothesis.H0:
        return 0.0
    return 2 * np.sqrt(illum.eta) * filtered_correlation(params, spec, tol).real


def snr_from_moments(mom, eta, m_pairs):
    """SNR of the photon-difference receiver from precomputed moments."""
    root_eta = np.sqrt(eta)
    diff1 = 2 * root_eta * mom.corr.real

    n0 = 0.5 * (mom.n_return_h0 + mom.v33)
    var0 = 2 * n0 * (n0 + 1) - 0.5 * (mom.n_return_h0 - mom.v33) ** 2

    np1 = 0.5 * (mom.n_return_h1 + mom.v33 + diff1)
    nm1 = 0.5 * (mom.n_return_h1 + mom.v33 - diff1)
    var1 = (
        np1 * (np1 + 1) + nm1 * (nm1 + 1)
        - 0.5 * (mom.n_return_h1 - mom.v33) ** 2
        - 2 * (root_eta * mom.corr.imag) ** 2
    )
    denom = (np.sqrt(var0) + np.sqrt(var1)) ** 2
    if not denom > 0:
        raise ParameterError("photon-difference variance vanishes under both hypotheses")
    return 4 * m_pairs * diff1**2 / denom


def snr_qi(params, illum, spec, tol=DEFAULT_TOL):
    """Signal-to-noise ratio of the quantum-illumination receiver for ``illum.m_pairs`` pairs."""
    mom = receiver_moments(params, illum, spec, tol)
    return snr_from_moments(mom, illum.eta, illum.m_pairs)


def snr_coherent(illum, v11, m=None):
    """Coherent-state transmitter baseline ``4 eta M V11 / (2 n_B + 1)``."""
    if v11 < 0:
        raise ParameterError(f"v11 must be >= 0, got {v11}", "v11")
    m = illum.m_pairs if m is None else m
    return 4 * illum.eta * m * v11 / (2 * illum.n_B + 1)


def error_probability(snr):
    """``erfc(sqrt(snr/8)) / 2`` for the Gaussian-approximated photon-difference test."""
    snr = np.asarray(snr, dtype=float)
    if np.any(snr < 0) or np.any(np.isnan(snr)):
        raise ParameterError("snr must be non-negative", "snr")
    p = 0.5 * erfc(np.sqrt(snr / 8))
    return p[()] if p.ndim == 0 else p


def report_from_moments(mom, illum):
    snr = snr_from_moments(mom, illum.eta, illum.m_pairs)
    coh = snr_coherent(illum, mom.v11)
    diagnostics = []
    if coh > 0:
        f_merit = snr / coh
    else:
        f_merit = None
        diagnostics.append("figure of merit undefined: coherent SNR is zero (eta = 0 or V11 = 0)")
    return IlluminationReport(
        snr_qi=float(snr),
        snr_coh=float(coh),
        f_merit=None if f_merit is None else float(f_merit),
        p_qi=float(error_probability(snr)),
        p_coh=float(error_probability(coh)),
        v11=float(mom.v11),
        diagnostics=tuple(diagnostics),
    )


def figure_of_merit(params, illum, spec, tol=DEFAULT_TOL):
    """SNRs, their ratio ``F`` and both error probabilities."""
    report = report_from_moments(receiver_moments(params, illum, spec, tol), illum)
    if not is_stable(params):
        report = replace(report, diagnostics=report.diagnostics + (
            "unstable parameters: the linear response has no steady state",))
    return report
