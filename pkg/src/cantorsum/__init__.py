"""Exact greedy decomposition of numbers into sums, products and powers of
middle-third Cantor set elements, with interval-arithmetic coverage checks."""

from .cantor import CantorPoint, GapInfo, cantor_ceil, cantor_floor, flip, is_member, locate_gap, stage_intervals, value
from .decomposer import decompose, initialize, objective, scale_certificate, sensitivity, staged_decay_violations
from .errors import (
    BudgetExceeded,
    CantorSumError,
    CertificateFormatError,
    DecompositionFailure,
    DigitUnavailable,
    IterationCap,
    NotInGap,
    NotTriadic,
    ParseError,
    Stalled,
    TargetOutsideInterval,
    UnsupportedDomain,
)
from .exact import ExactRational, parse, render, ternary_digit
from .intervals import IntervalSet
from .oracle import check_family_claims, coverage_sweep, covers, image_at_stage, minkowski_sum, pointwise_product, power_image
from .problem import Certificate, Flip, Problem, Variable, problem_by_name, standard_problems
from .verify import VerificationReport, verify

__all__ = [
    "BudgetExceeded",
    "cantor_ceil",
    "cantor_floor",
    "CantorPoint",
    "CantorSumError",
    "Certificate",
    "CertificateFormatError",
    "check_family_claims",
    "coverage_sweep",
    "covers",
    "decompose",
    "DecompositionFailure",
    "DigitUnavailable",
    "ExactRational",
    "flip",
    "Flip",
    "GapInfo",
    "image_at_stage",
    "initialize",
    "IntervalSet",
    "is_member",
    "IterationCap",
    "locate_gap",
    "minkowski_sum",
    "NotInGap",
    "NotTriadic",
    "objective",
    "parse",
    "ParseError",
    "pointwise_product",
    "power_image",
    "Problem",
    "problem_by_name",
    "render",
    "scale_certificate",
    "sensitivity",
    "stage_intervals",
    "staged_decay_violations",
    "Stalled",
    "standard_problems",
    "TargetOutsideInterval",
    "ternary_digit",
    "UnsupportedDomain",
    "value",
    "Variable",
    "VerificationReport",
    "verify",
]

__version__ = "0.1.0"
