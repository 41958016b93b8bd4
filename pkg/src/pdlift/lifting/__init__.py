"""Obstruction engine: maps into test rings, square-zero lifts, probes, T^1."""

from .conditions import (
    DEFAULT_BUDGET,
    NO_OBSTRUCTION,
    REFUTED,
    PointResult,
    ProbeReport,
    condition_i,
    condition_ii,
    condition_iii,
    curve_criterion_probe,
    enumerate_and_lift,
    probe_smoothness,
    required_bounds,
)
from .deligne import DeligneReport, deligne_example
from .maps import (
    LIFTED,
    NO_LIFT,
    PASS,
    PRECISION_LIMITED,
    AlgebraMap,
    LiftProblem,
    LiftReport,
    LinearCertificate,
    WellDefinedFailure,
    check_well_defined,
    lift_square_zero,
    restrict,
)
from .t1 import T1Class, T1LiftReport, T1Module, UnsupportedTarget, t1_lifting_check, t1_module
