"""Finitely generated subgroups of R^n with the relative coordinatewise ordering.

Two generating sets are offered. ``STD_PLUS_E`` takes e_1..e_n together with
E = sum(alpha_j e_j); ``UNIT_PLUS_E`` takes the unit u = sum(e_j) together with E.
Pure traces are the n coordinate evaluations.
"""

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from math import floor

import mpmath

from .exceptions import ValidationError
from .scalar_field import T, TScalar, approximate, enclose, format_scalar, sign

logger = logging.getLogger("dimgroups.ex1")


class GeneratorMode(StrEnum):
    STD_PLUS_E = "STD_PLUS_E"
    UNIT_PLUS_E = "UNIT_PLUS_E"


class Ex1Verdict(StrEnum):
    ZERO = "ZERO"
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"
    MIXED = "MIXED"
    BOUNDARY = "BOUNDARY"


@dataclass(frozen=True, slots=True)
class Ex1Group:
    n: int
    alphas: tuple[TScalar, ...]
    mode: GeneratorMode = GeneratorMode.STD_PLUS_E

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"n must be positive, got {self.n}")
        if len(self.alphas) != self.n:
            raise ValidationError(f"Expected {self.n} alphas, got {len(self.alphas)}")
        for j, alpha in enumerate(self.alphas, start=1):
            if alpha.degree < 1:
                raise ValidationError(
                    f"alpha_{j} = {format_scalar(alpha)} is rational; it must involve t"
                )

    @classmethod
    def standard(cls, n: int, mode: GeneratorMode = GeneratorMode.STD_PLUS_E) -> "Ex1Group":
        """alpha_j = t^j."""
        return cls(n, tuple(T**j for j in range(1, n + 1)), mode)

    @property
    def rank(self) -> int:
        return self.n + 1 if self.mode is GeneratorMode.STD_PLUS_E else 2

    def element(self, coeffs: Sequence[int]) -> "Ex1Element":
        if len(coeffs) != self.rank:
            raise ValidationError(
                f"{self.mode.value} elements have {self.rank} integer coefficients, "
                f"got {len(coeffs)}"
            )
        return Ex1Element(tuple(int(c) for c in coeffs))

    def zero(self) -> "Ex1Element":
        return Ex1Element((0,) * self.rank)

    def generators(self) -> list["Ex1Element"]:
        return [
            Ex1Element(tuple(1 if i == k else 0 for i in range(self.rank)))
            for k in range(self.rank)
        ]


@dataclass(frozen=True, slots=True)
class Ex1Element:
    """Integer coordinates on the generators; the E coefficient comes last.

    ``STD_PLUS_E``: (m_1, ..., m_n, m). ``UNIT_PLUS_E``: (q, m).
    """

    coeffs: tuple[int, ...] = field(default=())

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "Ex1Element") -> "Ex1Element":
        return Ex1Element(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __neg__(self) -> "Ex1Element":
        return Ex1Element(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "Ex1Element") -> "Ex1Element":
        return self + (-other)

    def scale(self, factor: int) -> "Ex1Element":
        return Ex1Element(tuple(factor * a for a in self.coeffs))


def coordinates(group: Ex1Group, g: Ex1Element) -> list[TScalar]:
    """Pure-trace values: m_j + m*alpha_j, or q + m*alpha_j."""
    m = g.coeffs[-1]
    if group.mode is GeneratorMode.STD_PLUS_E:
        return [alpha * m + g.coeffs[j] for j, alpha in enumerate(group.alphas)]
    q = g.coeffs[0]
    return [alpha * m + q for alpha in group.alphas]


def classify(group: Ex1Group, g: Ex1Element) -> Ex1Verdict:
    values = coordinates(group, g)
    if all(v.is_zero for v in values):
        return Ex1Verdict.ZERO
    if any(v.is_zero for v in values):
        return Ex1Verdict.BOUNDARY
    signs = {sign(v) for v in values}
    if signs == {1}:
        return Ex1Verdict.POSITIVE
    if signs == {-1}:
        return Ex1Verdict.NEGATIVE
    return Ex1Verdict.MIXED


def _scan_values(bound: int) -> list[int]:
    """0, 1, -1, 2, -2, ..., bound, -bound."""
    values = [0]
    for k in range(1, bound + 1):
        values.extend((k, -k))
    return values


def scan_elements(group: Ex1Group, bound: int) -> Iterator[Ex1Element]:
    """All nonzero elements with coefficients in [-bound, bound], small ones first.

    The first coefficient varies fastest.
    """
    if bound < 1:
        raise ValidationError(f"bound must be at least 1, got {bound}")
    values = _scan_values(bound)
    for combo in itertools.product(values, repeat=group.rank):
        coeffs = combo[::-1]
        if any(coeffs):
            yield Ex1Element(coeffs)


def extreme_simplicity_scan(group: Ex1Group, bound: int) -> Ex1Element | None:
    """First nonzero element with a vanishing pure trace, if any.

    A coordinate is zero exactly when it is symbolically zero in Q[t], so the
    scan never consults the sign oracle.
    """
    scanned = 0
    for g in scan_elements(group, bound):
        scanned += 1
        if any(v.is_zero for v in coordinates(group, g)):
            logger.warning(
                f"{group.mode.value} n={group.n}: {list(g.coeffs)} has a vanishing pure trace"
            )
            return g
    logger.info(f"{group.mode.value} n={group.n}: no boundary element among {scanned}")
    return None


def _positive_lower_bound(p: TScalar) -> Fraction:
    width = Fraction(1, 2**8)
    while True:
        lo = enclose(p, width).lo
        if lo > 0:
            return lo
        width /= 2**8


def order_unit_multiple(group: Ex1Group, g: Ex1Element, h: Ex1Element) -> int:
    """N >= 1 with N*g - h POSITIVE, for a POSITIVE g."""
    if classify(group, g) is not Ex1Verdict.POSITIVE:
        raise ValidationError(f"{list(g.coeffs)} is not POSITIVE")
    multiple = 1
    for g_value, h_value in zip(coordinates(group, g), coordinates(group, h), strict=True):
        upper = enclose(h_value, Fraction(1, 2**8)).hi
        multiple = max(multiple, floor(upper / _positive_lower_bound(g_value)) + 1)
    while classify(group, g.scale(multiple) - h) is not Ex1Verdict.POSITIVE:
        multiple *= 2
    return multiple


@dataclass(frozen=True, slots=True)
class NearestElement:
    element: Ex1Element
    distance: mpmath.mpf


def nearest_element(
    group: Ex1Group, target: Sequence[Fraction], bound: int, bits: int = 64
) -> NearestElement:
    """Brute-force search for the element closest to ``target`` in the sup norm.

    Float approximations only; the result says nothing certified about density.
    """
    if len(target) != group.n:
        raise ValidationError(f"Target needs {group.n} coordinates, got {len(target)}")
    with mpmath.mp.workprec(bits):
        alphas = [approximate(alpha, bits) for alpha in group.alphas]
        goal = [mpmath.mpf(x.numerator) / x.denominator for x in target]
        best: NearestElement | None = None
        for g in scan_elements(group, bound):
            m = g.coeffs[-1]
            if group.mode is GeneratorMode.STD_PLUS_E:
                values = [g.coeffs[j] + m * a for j, a in enumerate(alphas)]
            else:
                values = [g.coeffs[0] + m * a for a in alphas]
            distance = max(abs(v - x) for v, x in zip(values, goal, strict=True))
            if best is None or distance < best.distance:
                best = NearestElement(g, distance)
    if best is None:
        raise ValidationError(f"No elements with coefficients bounded by {bound}")
    logger.debug(f"nearest element {list(best.element.coeffs)} at distance {best.distance}")
    return best
