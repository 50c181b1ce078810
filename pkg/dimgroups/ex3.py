"""The rational span of 1 and x^i - t^i, strictly ordered on an interval.

An element is a function on the interval; it is positive when its minimum there is
positive. The group is simple and archimedean exactly when no nonzero element
attains an extremum of 0, which is what ``classify`` checks.
"""

import logging
import random
import time
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

from .exceptions import ConstantElement, ValidationError, VanishingAtRational
from .poly_real import (
    DomainInterval,
    MinSign,
    MinSignReport,
    RootInterval,
    XPoly,
    extremum_signs,
    isolate_roots,
)
from .scalar_field import T, TScalar, format_rational, random_rational, sign

logger = logging.getLogger("dimgroups.ex3")


@dataclass(frozen=True, slots=True)
class Ex3Element:
    """q_0 + sum(q_i * (x^i - t^i)); trailing zeros are trimmed."""

    q: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        values = list(self.q)
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "q", tuple(Fraction(v) for v in values))

    @classmethod
    def of(cls, values: Iterable[Fraction | int | str]) -> "Ex3Element":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def basis(cls, k: int) -> "Ex3Element":
        """e_k = x^k - t^k (e_0 = 1)."""
        return cls((Fraction(0),) * k + (Fraction(1),))

    @property
    def is_zero(self) -> bool:
        return not self.q

    @property
    def degree(self) -> int:
        return len(self.q) - 1

    def __add__(self, other: "Ex3Element") -> "Ex3Element":
        size = max(len(self.q), len(other.q))
        return Ex3Element(tuple(_at(self.q, i) + _at(other.q, i) for i in range(size)))

    def __neg__(self) -> "Ex3Element":
        return Ex3Element(tuple(-v for v in self.q))

    def __sub__(self, other: "Ex3Element") -> "Ex3Element":
        return self + (-other)

    def scale(self, factor: Fraction | int) -> "Ex3Element":
        return Ex3Element(tuple(v * factor for v in self.q))

    def describe(self) -> list[str]:
        return [format_rational(v) for v in self.q]


def _at(values: Sequence[Fraction], i: int) -> Fraction:
    return values[i] if i < len(values) else Fraction(0)


def to_poly(g: Ex3Element) -> XPoly:
    if g.is_zero:
        return XPoly()
    constant = TScalar.const(g.q[0])
    for i, q in enumerate(g.q[1:], start=1):
        constant = constant - T**i * q
    return XPoly([constant, *(TScalar.const(q) for q in g.q[1:])])


class Ex3Verdict(StrEnum):
    ZERO = "ZERO"
    POS_UNIT = "POS_UNIT"
    NEG_UNIT = "NEG_UNIT"
    SIGN_CHANGING = "SIGN_CHANGING"
    VIOLATION = "VIOLATION"


@dataclass(frozen=True, slots=True)
class Ex3Class:
    verdict: Ex3Verdict
    minimum: MinSignReport | None = None
    maximum: MinSignReport | None = None

    def describe(self) -> dict[str, object]:
        result: dict[str, object] = {"verdict": self.verdict.value}
        if self.minimum is not None:
            result["min"] = self.minimum.describe()
        if self.maximum is not None:
            result["max"] = self.maximum.describe()
        return result


def classify(g: Ex3Element, dom: DomainInterval | None = None) -> Ex3Class:
    """Classify through the MIN and MAX verdicts on ``dom`` ([0, 1] by default)."""
    if g.is_zero:
        return Ex3Class(Ex3Verdict.ZERO)
    low, high = extremum_signs(to_poly(g), dom or DomainInterval.unit())
    if low.verdict is MinSign.POS:
        verdict = Ex3Verdict.POS_UNIT
    elif high.verdict is MinSign.NEG:
        verdict = Ex3Verdict.NEG_UNIT
    elif low.verdict is MinSign.NEG and high.verdict is MinSign.POS:
        verdict = Ex3Verdict.SIGN_CHANGING
    else:
        verdict = Ex3Verdict.VIOLATION
    return Ex3Class(verdict, low, high)


class Side(StrEnum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"


@dataclass(frozen=True, slots=True)
class SensitivityWitness:
    element: Ex3Element
    domain: DomainInterval
    root: RootInterval

    def describe(self) -> dict[str, object]:
        return {
            "element": self.element.describe(),
            "interval": self.domain.describe(),
            "root": self.root.describe(),
        }


def sensitivity_witness(k: int, side: Side) -> SensitivityWitness:
    """An element vanishing at t = (t^k)^(1/k) when t is an endpoint of the interval.

    LEFT gives e_k on [t, 1]; RIGHT gives -e_k on [0, t].
    """
    if k < 1:
        raise ValidationError(f"k must be at least 1, got {k}")
    if side is Side.LEFT:
        element = Ex3Element.basis(k)
        dom = DomainInterval(T, TScalar.const(1))
    else:
        element = -Ex3Element.basis(k)
        dom = DomainInterval(TScalar.const(0), T)
    root = next(r for r in isolate_roots(to_poly(element), dom) if r.is_exact and r.lo == T)
    return SensitivityWitness(element, dom, root)


def rational_nonvanishing_probe(g: Ex3Element, points: Sequence[Fraction]) -> list[int]:
    """Signs of g at rational points.

    Each value has a nonzero t-part, so a zero sign raises ``VanishingAtRational``.
    """
    if all(q == 0 for q in g.q[1:]):
        raise ConstantElement(f"{g.describe()} has no nonconstant part")
    poly = to_poly(g)
    signs = []
    for point in points:
        value = sign(poly.evaluate(point))
        if value == 0:
            raise VanishingAtRational(format_rational(point))
        signs.append(value)
    return signs


def random_element(rng: random.Random, max_degree: int, bound: int) -> Ex3Element:
    """Nonzero element of degree <= max_degree with ``random_rational`` coefficients."""
    if max_degree < 0 or bound < 1:
        raise ValidationError(f"Need max_degree >= 0 and bound >= 1, got {max_degree}, {bound}")
    while True:
        g = Ex3Element(tuple(random_rational(rng, bound) for _ in range(max_degree + 1)))
        if not g.is_zero:
            return g


@dataclass(frozen=True, slots=True)
class BatchItem:
    element: Ex3Element
    result: Ex3Class
    elapsed_ms: float


@dataclass
class BatchResult:
    items: list[BatchItem] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        tally = Counter(item.result.verdict.value for item in self.items)
        return {verdict.value: tally.get(verdict.value, 0) for verdict in Ex3Verdict}

    @property
    def violations(self) -> list[BatchItem]:
        return [item for item in self.items if item.result.verdict is Ex3Verdict.VIOLATION]


def random_batch_verify(
    max_degree: int,
    count: int,
    seed: int,
    bound: int,
    dom: DomainInterval | None = None,
    workers: int = 1,
) -> BatchResult:
    """Classify ``count`` seeded random elements; results keep the draw order."""
    if count < 1:
        raise ValidationError(f"count must be at least 1, got {count}")
    rng = random.Random(seed)  # noqa: S311
    elements = [random_element(rng, max_degree, bound) for _ in range(count)]
    dom = dom or DomainInterval.unit()
    logger.info(f"Classifying {count} elements of degree <= {max_degree} (seed {seed})")

    def timed(g: Ex3Element) -> BatchItem:
        start = time.perf_counter()
        found = classify(g, dom)
        return BatchItem(g, found, (time.perf_counter() - start) * 1000)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            result = BatchResult(list(pool.map(timed, elements)))
    else:
        result = BatchResult([timed(g) for g in elements])
    for item in result.violations:
        logger.warning(f"VIOLATION for {item.element.describe()}: {item.result.describe()}")
    logger.info(f"Batch finished: {result.counts}")
    return result


def dominating_multiple(
    g: Ex3Element, h: Ex3Element, dom: DomainInterval | None = None, cap: int = 2**64
) -> int:
    """Smallest power of two N with N*g - h POS_UNIT, for a POS_UNIT g."""
    if classify(g, dom).verdict is not Ex3Verdict.POS_UNIT:
        raise ValidationError(f"{g.describe()} is not POS_UNIT")
    multiple = 1
    while classify(g.scale(multiple) - h, dom).verdict is not Ex3Verdict.POS_UNIT:
        multiple *= 2
        if multiple > cap:
            raise ValidationError(f"No multiple up to {cap} dominates {h.describe()}")
    return multiple
