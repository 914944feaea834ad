"""Numerical verification of sharp functional inequalities built on a
Finsler norm: gauges and their duals, Wulff-ball geometry, radial coordinate
transplants, sharp constants, and two-sided quadrature checks."""

from . import inequalities, norms, quadrature, specfun, transplant
from .errors import (
    AdmissibilityError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    EfficiencyError,
    FinslerError,
    InputError,
    ModelError,
    PrecisionError,
    SearchError,
)
from .inequalities import (
    ExtremalSpec,
    SharpConstants,
    evaluate_case,
    extremal_profile,
    moser_profile,
    perturbation_check,
    plap_eigenfunction,
    plap_first_eigenvalue,
    sharp_constants,
)
from .norms import (
    NormSpec,
    dual_eval,
    dual_grad,
    dual_spec,
    norm_eval,
    norm_grad,
    polar_integral,
    wulff_measure,
    wulff_perimeter,
)
from .report import VerificationReport
from .transplant import (
    RadialProfile,
    TraceProfile,
    TransplantMap,
    equivalence_check,
    map_forward,
    map_inverse,
    map_jacobian,
    transplant_profile,
    weight_at,
)

__version__ = "1.0.0"
