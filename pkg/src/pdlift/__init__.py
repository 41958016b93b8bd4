"""Exact divided-power test algebras and lifting probes for formal W-algebras."""

from .expr import ExprError, format_poly, parse_poly
from .lifting import (
    AlgebraMap,
    LiftProblem,
    LiftReport,
    ProbeReport,
    T1LiftReport,
    check_well_defined,
    condition_i,
    condition_ii,
    condition_iii,
    curve_criterion_probe,
    deligne_example,
    lift_square_zero,
    probe_smoothness,
    t1_lifting_check,
    t1_module,
)
from .pd_rings import (
    PD,
    ArtinTestRing,
    PDEps,
    PDEpsQuot,
    Ramified,
    ResidueSeries,
    RingDescriptor,
    RingElem,
    Wm,
    WmEps,
    WmMixedEps,
    gamma,
    make_ring,
    make_truncation,
    shift_substitution,
)
from .problem import ProblemFile
from .series import (
    Presentation,
    TruncatedSeries,
    compose,
    evaluate,
    jacobian,
    linear_diagnostics,
    minimize_presentation,
    translate_to_point,
)
from .witt import RingParams, WittInt, ZpMatrix, solve_linear, valuation

__version__ = "0.1.0"
