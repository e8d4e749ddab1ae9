"""p-adic arithmetic with lattice-based precision tracking."""

from .core import INF, FloatPAdic, PAdicApprox, parse_digits, render_digits
from .elements import PAdicElement, PAdicRing, random_element
from .errors import (
    DeficientRank,
    DivisionByIndistinguishableZero,
    DivisionByZero,
    MixedRings,
    NotInRing,
    PrecisionError,
    UnknownVariable,
    UnsupportedInMode,
)
from .kernels import BACKEND
from .tracker import DiffRecord, Instrumentation, PrecisionModule

__all__ = [
    "INF",
    "BACKEND",
    "FloatPAdic",
    "PAdicApprox",
    "PAdicElement",
    "PAdicRing",
    "PrecisionModule",
    "DiffRecord",
    "Instrumentation",
    "random_element",
    "render_digits",
    "parse_digits",
    "PrecisionError",
    "DivisionByIndistinguishableZero",
    "DivisionByZero",
    "UnknownVariable",
    "DeficientRank",
    "UnsupportedInMode",
    "NotInRing",
    "MixedRings",
]

__version__ = "0.1.0"
