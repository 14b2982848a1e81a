"""Model constants of the linearized transmitter and the illumination scenario.

All rates are expressed in units of the cavity decay rate (``kappa = 1`` by
default) and all times in units of ``1/kappa``.
"""

from dataclasses import dataclass, fields, replace

import numpy as np
from scipy import constants

from .errors import ParameterError

# Occupancies quoted for the reference figures. They are used as-is; see
# ``planck_occupation`` for a temperature-based estimate.
N_MECH_REFERENCE = 61.945
N_BACKGROUND_REFERENCE = 610.0


@dataclass(frozen=True)
class SystemParams:
    """Constants of the linearized three-mode model.

    Parameters
    ----------
    kappa : float
        Cavity decay rate (both cavities).
    gamma : float
        Mechanical damping rate.
    delta : float
        Frequency mismatch between the mechanical mode and the cavity splitting.
    g1, g2 : float
        Many-photon couplings of the beam-splitter (microwave) and
        two-mode-squeezing (optical) interactions.
    n_b : float
        Thermal phonon number of the mechanical bath.
    n_plus_in, n_minus_in : float
        Thermal occupancies of the microwave and optical input fields.
    """

    kappa: float = 1.0
    gamma: float = 1e-3
    delta: float = 1.5
    g1: float = 1.0
    g2: float = 1.0
    n_b: float = N_MECH_REFERENCE
    n_plus_in: float = 0.0
    n_minus_in: float = 0.0

    @property
    def c1(self):
        return cooperativity(self.g1, self.kappa, self.gamma)

    @property
    def c2(self):
        return cooperativity(self.g2, self.kappa, self.gamma)

    @classmethod
    def from_cooperativities(cls, c1, c2, kappa=1.0, gamma=1e-3, **kwargs):
        """Build parameters from ``C = G**2 / (kappa * gamma)`` instead of couplings."""
        return cls(
            kappa=kappa,
            gamma=gamma,
            g1=coupling_from_cooperativity(c1, kappa, gamma),
            g2=coupling_from_cooperativity(c2, kappa, gamma),
            **kwargs,
        )

    def replace(self, **changes):
        return replace(self, **changes)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class IlluminationParams:
    """Target reflectivity, background occupancy and number of mode pairs."""

    eta: float = 0.07
    n_B: float = N_BACKGROUND_REFERENCE
    m_pairs: int = 1

    def __post_init__(self):
        if not 0.0 <= self.eta < 1.0:
            raise ParameterError(f"eta must lie in [0, 1), got {self.eta}", "eta")
        if not self.n_B >= 0.0:
            raise ParameterError(f"n_B must be >= 0, got {self.n_B}", "n_B")
        if int(self.m_pairs) != self.m_pairs or self.m_pairs < 1:
            raise ParameterError(
                f"m_pairs must be an integer >= 1, got {self.m_pairs}", "m_pairs"
            )

    def replace(self, **changes):
        return replace(self, **changes)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def planck_occupation(angular_frequency, temperature):
    """Bose-Einstein occupation ``1 / (exp(hbar*omega / kB*T) - 1)``.

    Parameters
    ----------
    angular_frequency : float or array_like
        Mode frequency in rad/s. Must be positive.
    temperature : float or array_like
        Bath temperature in kelvin. Zero temperature gives zero occupancy.
    """
    w = np.asarray(angular_frequency, dtype=float)
    t = np.asarray(temperature, dtype=float)
    if np.any(w <= 0):
        raise ParameterError("angular_frequency must be positive", "angular_frequency")
    if np.any(t < 0):
        raise ParameterError("temperature must be non-negative", "temperature")
    with np.errstate(divide="ignore", over="ignore"):
        x = constants.hbar * w / (constants.k * t)
        n = 1.0 / np.expm1(x)
    n = np.where(t == 0, 0.0, n)
    return n[()] if n.ndim == 0 else n


def cooperativity(g, kappa, gamma):
    return g**2 / (kappa * gamma)


def coupling_from_cooperativity(c, kappa, gamma):
    """Inverse of ``C = G**2 / (kappa * gamma)``."""
    if c < 0:
        raise ParameterError(f"cooperativity must be >= 0, got {c}", "c")
    return float(np.sqrt(c * kappa * gamma))


def validate(params):
    """Check a :class:`SystemParams` instance.

    Raises :class:`ParameterError` naming the first offending field. Returns a
    (possibly empty) list of non-fatal diagnostics; currently the only one is
    the stability warning for ``C2 > C1``.
    """
    positive = ("kappa", "gamma")
    nonnegative = ("g1", "g2", "n_b", "n_plus_in", "n_minus_in")
    for name in positive:
        value = getattr(params, name)
        if not (np.isfinite(value) and value > 0):
            raise ParameterError(f"{name} must be positive, got {value}", name)
    for name in nonnegative:
        value = getattr(params, name)
        if not (np.isfinite(value) and value >= 0):
            raise ParameterError(f"{name} must be non-negative, got {value}", name)
    if not np.isfinite(params.delta):
        raise ParameterError(f"delta must be finite, got {params.delta}", "delta")

    diagnostics = []
    if params.c2 > params.c1:
        diagnostics.append(
            f"stability: C2 = {params.c2:.6g} exceeds C1 = {params.c1:.6g}; "
            "the steady state may be unstable"
        )
    return diagnostics


def figure2_params(**overrides):
    """Spectrum/entanglement reference set (``G1 = G2 = kappa``)."""
    base = dict(kappa=1.0, gamma=1e-3, delta=1.5, g1=1.0, g2=1.0, n_b=N_MECH_REFERENCE)
    base.update(overrides)
    return SystemParams(**base)


def figure4_params(c=500.0, **overrides):
    """Bandwidth/delay reference set (``C1 = C2 = 500``)."""
    base = dict(kappa=1.0, gamma=1e-3, delta=1.5, n_b=N_MECH_REFERENCE)
    base.update(overrides)
    return SystemParams.from_cooperativities(c, c, **base)
