"""Exact Green's function for bulk Comptonization in an X-ray pulsar accretion column."""

from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    GridError,
    MissedRootError,
    NonFiniteIntegrandError,
    NonPositiveNormalizationError,
    PoleError,
    PulsarGreenError,
    ResonanceError,
    ToleranceNotMetError,
)
from .eigenbasis import SpectralParams, phi1, phi1_star, phi2, phi2_scaled, spectral_params, wronskian
from .flow import ColumnGeometry, FlowState
from .identities import IdentityReport, MomentSpec
from .quadrature import QuadratureResult, integrate_weighted
from .solver import (
    EigenMode,
    GreensEvaluator,
    ProblemSpec,
    SourceSpectrum,
    build_evaluator,
    convolve_spectrum,
    find_eigenvalues,
    greens_function,
)

__version__ = "0.1.0"
