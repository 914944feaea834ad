"""Sharp constants, extremal profiles, eigenvalue solvers, and the
verification engine for the Finsler-symmetric functional inequalities."""

from .constants import SharpConstants, sharp_constants, logsob_normalization
from .eigen import plap_first_eigenvalue, plap_eigenfunction
from .extremals import ExtremalSpec, extremal_profile, moser_profile
from .verify import evaluate_case, perturbation_check

__all__ = [
    "SharpConstants",
    "sharp_constants",
    "logsob_normalization",
    "plap_first_eigenvalue",
    "plap_eigenfunction",
    "ExtremalSpec",
    "extremal_profile",
    "moser_profile",
    "evaluate_case",
    "perturbation_check",
]
