"""diagkit: diagonal arguments, certificates, and self-reference at desk scale."""

import sys

# Sentence numbers reach tens of thousands of digits (nested pairing squares
# magnitudes); the interpreter's int<->str guard would reject printing them.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(2_000_000)

# decoded program trees can chain one unary node per decimal digit
sys.setrecursionlimit(20000)

from . import formal, instances, universe
from .core import (
    Carrier,
    EndoMap,
    EvalMatrix,
    FixedPointWitness,
    NonRepresentabilityReport,
    Section,
    YMap,
    cantor_witness,
    compose_diagonal,
    compose_with_section,
    fixed_points,
    representing_columns,
    verify_fixed_point,
    verify_nonrepresentability,
    weak_diagonal_fixed_point,
)
from .errors import InputError, NotApplicableError

__version__ = "0.1.0"

__all__ = [
    "formal",
    "instances",
    "universe",
    "Carrier",
    "EndoMap",
    "EvalMatrix",
    "FixedPointWitness",
    "InputError",
    "NonRepresentabilityReport",
    "NotApplicableError",
    "Section",
    "YMap",
    "cantor_witness",
    "compose_diagonal",
    "compose_with_section",
    "fixed_points",
    "representing_columns",
    "verify_fixed_point",
    "verify_nonrepresentability",
    "weak_diagonal_fixed_point",
]
