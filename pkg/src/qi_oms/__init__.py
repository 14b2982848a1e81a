"""Optomechanical microwave quantum illumination in the weak-coupling regime.

Rates are in units of the cavity decay rate ``kappa`` and times in ``1/kappa``.
"""

__version__ = "0.1.0"

from .delay_opt import (  # noqa: E402
    DelayResult,
    optimal_delay_analytic,
    optimal_delay_numeric,
    optimize_delay,
    phase_derivative_check,
)
from .dynamics import (  # noqa: E402
    ScatteringCoefficients,
    SpectralPoint,
    closed_form_spectra,
    correlation_profile,
    is_stable,
    output_spectra,
    scattering_coefficients,
    stability_margin,
)
from .entanglement import en_spectrum, log_negativity, pt_symplectic_eigenvalue  # noqa: E402
from .errors import (  # noqa: E402
    AccuracyError,
    NumericalError,
    ParameterError,
    QiOmsError,
    SingularityError,
    UnsupportedConfigurationError,
    UsageError,
)
from .filters import CovarianceMatrix, FilterSpec, filter_amplitude, project_covariance  # noqa: E402
from .illumination import (  # noqa: E402
    Hypothesis,
    IlluminationReport,
    error_probability,
    figure_of_merit,
    mean_photon_difference,
    receiver_output_moment,
    snr_coherent,
    snr_qi,
)
from .params import (  # noqa: E402
    IlluminationParams,
    SystemParams,
    coupling_from_cooperativity,
    figure2_params,
    figure4_params,
    planck_occupation,
    validate,
)
from .quadrature import IntegrationResult, integrate_adaptive, spectral_breakpoints  # noqa: E402

__all__ = [
    "__version__",
    "AccuracyError",
    "CovarianceMatrix",
    "DelayResult",
    "FilterSpec",
    "Hypothesis",
    "IlluminationParams",
    "IlluminationReport",
    "IntegrationResult",
    "NumericalError",
    "ParameterError",
    "QiOmsError",
    "ScatteringCoefficients",
    "SingularityError",
    "SpectralPoint",
    "SystemParams",
    "UnsupportedConfigurationError",
    "UsageError",
    "closed_form_spectra",
    "correlation_profile",
    "coupling_from_cooperativity",
    "en_spectrum",
    "error_probability",
    "figure2_params",
    "figure4_params",
    "figure_of_merit",
    "filter_amplitude",
    "integrate_adaptive",
    "is_stable",
    "log_negativity",
    "mean_photon_difference",
    "optimal_delay_analytic",
    "optimal_delay_numeric",
    "optimize_delay",
    "output_spectra",
    "phase_derivative_check",
    "planck_occupation",
    "project_covariance",
    "pt_symplectic_eigenvalue",
    "receiver_output_moment",
    "scattering_coefficients",
    "snr_coherent",
    "snr_qi",
    "spectral_breakpoints",
    "stability_margin",
    "validate",
]
