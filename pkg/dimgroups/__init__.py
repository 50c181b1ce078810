"""Exact arithmetic for simple archimedean dimension groups over Q[pi - 3]."""

from .exceptions import DimGroupsError, PrecisionExhausted
from .poly_real import DomainInterval, XPoly, extremum_sign, isolate_roots
from .scalar_field import T, TScalar, compare, configure, sign

__version__ = "0.1.0"

__all__ = [
    "DimGroupsError",
    "DomainInterval",
    "PrecisionExhausted",
    "T",
    "TScalar",
    "XPoly",
    "compare",
    "configure",
    "extremum_sign",
    "isolate_roots",
    "sign",
]
