"""Univariate polynomials in x over Q[t] and their real roots on intervals.

Ring operations run on sympy polynomials over QQ[t]. Sturm chains are built
from pseudo-remainders, so no fractions in t ever appear.
Every chain element is kept primitive; the positive factors dropped along the
way are tracked through the sign oracle, so sign variations still count roots.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

import sympy
from sympy import Poly
from sympy.polys.polyerrors import ExactQuotientFailed

from .exceptions import ConstantFunction, ValidationError, ZeroPolynomial
from .scalar_field import (
    QQ_T,
    T_SYMBOL,
    Coefficient,
    TScalar,
    format_scalar,
    is_less,
    parse_scalar,
    rational_between,
    sign,
)

logger = logging.getLogger("dimgroups.poly_real")

X_SYMBOL = sympy.Symbol("x")


class XPoly:
    """Polynomial in x with Q[t] coefficients; ``coeffs[i]`` multiplies x^i."""

    __slots__ = ("coeffs",)

    coeffs: tuple[TScalar, ...]

    def __init__(self, coeffs: Iterable[TScalar | Coefficient] = ()) -> None:
        values = [TScalar.coerce(c) for c in coeffs]
        while values and values[-1].is_zero:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("XPoly is immutable")

    @classmethod
    def const(cls, value: TScalar | Coefficient) -> "XPoly":
        return cls((value,))

    @classmethod
    def x_power(cls, k: int, coefficient: TScalar | Coefficient = 1) -> "XPoly":
        return cls([TScalar()] * k + [TScalar.coerce(coefficient)])

    @classmethod
    def from_rationals(cls, values: Iterable[Coefficient]) -> "XPoly":
        return cls(TScalar.const(v) for v in values)

    @classmethod
    def from_roots(cls, roots: Iterable[tuple[TScalar | Coefficient, int]]) -> "XPoly":
        """Product of (x - r)^m over the given (r, m) pairs."""
        result = cls.const(1)
        for root, multiplicity in roots:
            factor = cls((-TScalar.coerce(root), TScalar.const(1)))
            for _ in range(multiplicity):
                result = result * factor
        return result

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> TScalar:
        return self.coeffs[-1] if self.coeffs else TScalar()

    def coefficient(self, k: int) -> TScalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else TScalar()

    def __add__(self, other: "XPoly | TScalar | Coefficient") -> "XPoly":
        other = _coerce(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return XPoly(self.coefficient(i) + other.coefficient(i) for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> "XPoly":
        return XPoly(-c for c in self.coeffs)

    def __sub__(self, other: "XPoly | TScalar | Coefficient") -> "XPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "XPoly | TScalar | Coefficient") -> "XPoly":
        return _coerce(other) - self

    def __mul__(self, other: "XPoly | TScalar | Coefficient") -> "XPoly":
        if not isinstance(other, XPoly):
            return XPoly(c * other for c in self.coeffs)
        if self.is_zero or other.is_zero:
            return XPoly()
        product = [TScalar()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] = product[i + j] + a * b
        return XPoly(product)

    __rmul__ = __mul__

    def shift(self, k: int) -> "XPoly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return XPoly([TScalar()] * k + list(self.coeffs))

    def derivative(self) -> "XPoly":
        return _from_sympy(_to_sympy(self).diff(X_SYMBOL))

    def evaluate(self, point: TScalar | Coefficient) -> TScalar:
        point = TScalar.coerce(point)
        result = TScalar()
        for c in reversed(self.coeffs):
            result = result * point + c
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"XPoly({format_xpoly(self)!r})"


def _coerce(value: "XPoly | TScalar | Coefficient") -> XPoly:
    return value if isinstance(value, XPoly) else XPoly.const(value)


def format_xpoly(f: XPoly) -> list[str]:
    return [format_scalar(c) for c in f.coeffs]


def parse_xpoly(texts: Sequence[str]) -> XPoly:
    return XPoly(parse_scalar(text) for text in texts)


@dataclass(frozen=True, slots=True)
class DomainInterval:
    """Closed interval [a, b] with endpoints in Q[t] and a < b at t."""

    a: TScalar
    b: TScalar

    def __post_init__(self) -> None:
        if not is_less(self.a, self.b):
            raise ValidationError(
                f"Interval endpoints must satisfy a < b: [{format_scalar(self.a)}, "
                f"{format_scalar(self.b)}]"
            )

    @classmethod
    def unit(cls) -> "DomainInterval":
        return cls(TScalar.const(0), TScalar.const(1))

    @classmethod
    def parse(cls, a: str, b: str) -> "DomainInterval":
        return cls(parse_scalar(a), parse_scalar(b))

    def describe(self) -> list[str]:
        return [format_scalar(self.a), format_scalar(self.b)]


@dataclass(frozen=True, slots=True)
class RootInterval:
    """Open interval (lo, hi) holding exactly one root, or the exact root lo == hi.

    Endpoints of a non-degenerate interval are never roots.
    """

    lo: TScalar
    hi: TScalar
    multiplicity: int = 1

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def describe(self) -> dict[str, object]:
        return {
            "lo": format_scalar(self.lo),
            "hi": format_scalar(self.hi),
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True, slots=True)
class RootIsolation:
    roots: tuple[RootInterval, ...]

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self) -> Iterator[RootInterval]:
        return iter(self.roots)

    def __getitem__(self, index: int) -> RootInterval:
        return self.roots[index]


@dataclass(frozen=True, slots=True)
class SturmCount:
    """Distinct roots in (a, b] plus whether a itself is a root."""

    count: int
    root_at_left: bool


class MinSign(StrEnum):
    POS = "POS"
    ZERO = "ZERO"
    NEG = "NEG"


class Direction(StrEnum):
    MIN = "MIN"
    MAX = "MAX"


@dataclass(frozen=True, slots=True)
class MinSignReport:
    """Sign of the extremum of f on a domain, with a re-checkable witness.

    For MIN, NEG carries a point where f < 0 and ZERO the isolating interval of a
    root. For MAX, POS carries a point where f > 0.
    """

    verdict: MinSign
    witness_point: TScalar | None = None
    witness_root: RootInterval | None = None

    def describe(self) -> dict[str, object]:
        result: dict[str, object] = {"verdict": self.verdict.value}
        if self.witness_point is not None:
            result["witness_point"] = format_scalar(self.witness_point)
        if self.witness_root is not None:
            result["witness_root"] = self.witness_root.describe()
        return result


def _to_sympy(f: XPoly) -> Poly:
    """Poly in x over QQ[t] with the same coefficients."""
    return Poly.from_list([c.element for c in reversed(f.coeffs)] or [0], X_SYMBOL, domain=QQ_T)


def _from_sympy(poly: Poly) -> XPoly:
    return XPoly(TScalar.from_element(QQ_T.convert(c)) for c in reversed(poly.rep.to_list()))


def primitive_part(f: XPoly, keep_sign: bool = True) -> XPoly:
    """f divided by its content over Q[t] and rescaled to coprime integers.

    With ``keep_sign`` the result is a positive multiple of f at t, so it can
    stand in for f in any sign computation.
    """
    if f.is_zero:
        return f
    content, part = _to_sympy(f).primitive()
    if keep_sign and sign(TScalar.from_sympy(content)) < 0:
        part = -part
    _, part = part.inject().primitive()
    return _from_sympy(part.eject(T_SYMBOL))


def pseudo_remainder(a: XPoly, b: XPoly) -> XPoly:
    """prem(a, b), i.e. the remainder of lc(b)^(deg a - deg b + 1) * a by b."""
    if b.is_zero:
        raise ZeroPolynomial("pseudo-division by the zero polynomial")
    return _from_sympy(_to_sympy(a).prem(_to_sympy(b)))


def exact_quotient(a: XPoly, b: XPoly) -> XPoly:
    """a / b for b dividing a in Q[t][x]."""
    if b.is_zero:
        raise ZeroPolynomial("division by the zero polynomial")
    try:
        return _from_sympy(_to_sympy(a).exquo(_to_sympy(b), auto=False))
    except ExactQuotientFailed as e:
        raise ValidationError("Polynomial division is not exact") from e


def poly_gcd(a: XPoly, b: XPoly) -> XPoly:
    """Primitive gcd over Q[t][x]; its sign at t is not normalized."""
    return primitive_part(_from_sympy(_to_sympy(a).gcd(_to_sympy(b))), keep_sign=False)


def _positive_leading(f: XPoly) -> XPoly:
    return -f if sign(f.leading) < 0 else f


def squarefree_part(f: XPoly) -> XPoly:
    """f / gcd(f, f'), primitive with positive leading coefficient at t."""
    if f.is_zero:
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if f.is_constant:
        return XPoly.const(1)
    return _positive_leading(primitive_part(_from_sympy(_to_sympy(f).sqf_part())))


def sturm_chain(f: XPoly) -> list[XPoly]:
    """Sturm chain f, f', -rem(...), ... with every element scaled by a positive factor."""
    if f.is_zero:
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    chain = [primitive_part(f)]
    derivative = f.derivative()
    if derivative.is_zero:
        return chain
    chain.append(primitive_part(derivative))
    while True:
        previous, current = chain[-2], chain[-1]
        remainder = pseudo_remainder(previous, current)
        if remainder.is_zero:
            break
        delta = previous.degree - current.degree
        # prem = lc^(delta+1) * rem, so -rem is a positive multiple of -prem * sign(lc)^(delta+1)
        if delta % 2 == 0 and sign(current.leading) < 0:
            remainder = -remainder
        chain.append(primitive_part(-remainder))
    return chain


def sign_variations(chain: Sequence[XPoly], point: TScalar) -> int:
    signs = [s for s in (sign(p.evaluate(point)) for p in chain) if s]
    return sum(1 for left, right in zip(signs, signs[1:], strict=False) if left != right)


class _Sturm:
    """Sturm data for a square-free polynomial, with per-point caches."""

    def __init__(self, squarefree: XPoly) -> None:
        self.poly = squarefree
        self.chain = sturm_chain(squarefree)
        self._variations: dict[TScalar, int] = {}
        self._roots: dict[TScalar, bool] = {}

    def variations(self, point: TScalar) -> int:
        if point not in self._variations:
            self._variations[point] = sign_variations(self.chain, point)
        return self._variations[point]

    def is_root(self, point: TScalar) -> bool:
        if point not in self._roots:
            self._roots[point] = self.poly.evaluate(point).is_zero
        return self._roots[point]

    def count_half_open(self, lo: TScalar, hi: TScalar) -> int:
        """Distinct roots in (lo, hi]."""
        return self.variations(lo) - self.variations(hi)

    def count_open(self, lo: TScalar, hi: TScalar) -> int:
        return self.count_half_open(lo, hi) - (1 if self.is_root(hi) else 0)


def _split_point(lo: TScalar, hi: TScalar) -> TScalar:
    """Midpoint for rational ends, else a rational in the middle half of (lo, hi)."""
    if lo.is_constant and hi.is_constant:
        return TScalar.const((lo.constant_value + hi.constant_value) / 2)
    quarter = (hi - lo) * Fraction(1, 4)
    return TScalar.const(rational_between(lo + quarter, hi - quarter))


def _bisect(
    sturm: _Sturm, lo: TScalar, hi: TScalar, count: int, depth: int = 0
) -> list[RootInterval]:
    """Isolate the ``count`` roots in the open interval (lo, hi)."""
    if count == 0:
        return []
    if count == 1 and not sturm.is_root(lo) and not sturm.is_root(hi):
        return [RootInterval(lo, hi)]
    middle = _split_point(lo, hi)
    exact = sturm.is_root(middle)
    left = sturm.count_half_open(lo, middle) - (1 if exact else 0)
    right = count - left - (1 if exact else 0)
    logger.debug(f"bisect depth {depth}: {left} left, exact={exact}, {right} right")
    result = _bisect(sturm, lo, middle, left, depth + 1)
    if exact:
        result.append(RootInterval(middle, middle))
    result.extend(_bisect(sturm, middle, hi, right, depth + 1))
    return result


def _isolate_distinct(sturm: _Sturm, dom: DomainInterval) -> list[RootInterval]:
    roots: list[RootInterval] = []
    if sturm.is_root(dom.a):
        roots.append(RootInterval(dom.a, dom.a))
    roots.extend(_bisect(sturm, dom.a, dom.b, sturm.count_open(dom.a, dom.b)))
    if sturm.is_root(dom.b):
        roots.append(RootInterval(dom.b, dom.b))
    return roots


def sturm_count(f: XPoly, dom: DomainInterval) -> SturmCount:
    if f.is_zero:
        raise ZeroPolynomial("Sturm count of the zero polynomial")
    sturm = _Sturm(squarefree_part(f))
    return SturmCount(sturm.count_half_open(dom.a, dom.b), sturm.is_root(dom.a))


def root_in(f: XPoly, root: RootInterval) -> bool:
    """Whether f vanishes at the root isolated by ``root``."""
    if f.is_zero:
        return True
    if root.is_exact:
        return f.evaluate(root.lo).is_zero
    if f.is_constant:
        return False
    sturm = _Sturm(squarefree_part(f))
    return sturm.count_open(root.lo, root.hi) > 0


def _multiplicity(f: XPoly, root: RootInterval) -> int:
    multiplicity = 1
    current = f
    while True:
        current = poly_gcd(current, current.derivative())
        if current.is_constant or not root_in(current, root):
            return multiplicity
        multiplicity += 1


def isolate_roots(f: XPoly, dom: DomainInterval) -> RootIsolation:
    """Sorted isolating intervals of all distinct roots of f in [a, b], with multiplicities."""
    if f.is_zero:
        raise ZeroPolynomial("root isolation of the zero polynomial")
    if f.is_constant:
        return RootIsolation(())
    sturm = _Sturm(squarefree_part(f))
    distinct = _isolate_distinct(sturm, dom)
    roots = tuple(RootInterval(r.lo, r.hi, _multiplicity(f, r)) for r in distinct)
    logger.debug(f"isolated {len(roots)} roots of degree {f.degree} polynomial")
    return RootIsolation(roots)


def refine_root(f: XPoly, root: RootInterval, width: Fraction) -> RootInterval:
    """Bisect an isolating interval of f until hi - lo <= width."""
    if root.is_exact:
        return root
    squarefree = squarefree_part(f)
    lo, hi = root.lo, root.hi
    lo_sign = sign(squarefree.evaluate(lo))
    while sign(hi - lo - width) > 0:
        middle = _split_point(lo, hi)
        middle_sign = sign(squarefree.evaluate(middle))
        if middle_sign == 0:
            return RootInterval(middle, middle, root.multiplicity)
        if middle_sign == lo_sign:
            lo = middle
        else:
            hi = middle
    return RootInterval(lo, hi, root.multiplicity)


def _sample_points(roots: Sequence[RootInterval], dom: DomainInterval) -> list[TScalar]:
    """Non-root points meeting every gap between consecutive roots and the ends."""
    points: list[TScalar] = []
    if not roots or not roots[0].is_exact or roots[0].lo != dom.a:
        points.append(dom.a)
    for index, root in enumerate(roots):
        if not root.is_exact:
            points.extend((root.lo, root.hi))
        elif index + 1 < len(roots) and roots[index + 1].is_exact:
            points.append(_split_point(root.lo, roots[index + 1].lo))
    if not roots or not roots[-1].is_exact or roots[-1].lo != dom.b:
        points.append(dom.b)
    unique: list[TScalar] = []
    for point in points:
        if point not in unique:
            unique.append(point)
    return unique


def extremum_signs(f: XPoly, dom: DomainInterval) -> tuple[MinSignReport, MinSignReport]:
    """MIN and MAX reports of f on dom from one root isolation."""
    if f.is_zero:
        raise ZeroPolynomial("extremum of the zero polynomial")
    if f.is_constant:
        roots: list[RootInterval] = []
    else:
        roots = _isolate_distinct(_Sturm(squarefree_part(f)), dom)
    negative = positive = None
    for point in _sample_points(roots, dom):
        s = sign(f.evaluate(point))
        if s < 0 and negative is None:
            negative = point
        elif s > 0 and positive is None:
            positive = point
    if negative is not None:
        low = MinSignReport(MinSign.NEG, witness_point=negative)
    elif roots:
        low = MinSignReport(MinSign.ZERO, witness_root=roots[0])
    else:
        low = MinSignReport(MinSign.POS)
    if positive is not None:
        high = MinSignReport(MinSign.POS, witness_point=positive)
    elif roots:
        high = MinSignReport(MinSign.ZERO, witness_root=roots[0])
    else:
        high = MinSignReport(MinSign.NEG)
    return low, high


def extremum_sign(f: XPoly, dom: DomainInterval, direction: Direction) -> MinSignReport:
    low, high = extremum_signs(f, dom)
    return low if direction is Direction.MIN else high


@dataclass(frozen=True, slots=True)
class LevelCrossingWitness:
    """g = b*h - a*unit vanishing inside ``root``, with q = a/b the chosen level."""

    g: XPoly
    root: RootInterval
    level: Fraction

    def describe(self) -> dict[str, object]:
        return {
            "g": format_xpoly(self.g),
            "level": f"{self.level.numerator}/{self.level.denominator}",
            "root": self.root.describe(),
        }


def _distinct_values(h: XPoly, dom: DomainInterval) -> tuple[TScalar, TScalar]:
    """Two values h(p) < h(q) at points of dom."""
    points = [dom.a, dom.b]
    pieces = 2
    while True:
        values = [h.evaluate(p) for p in points]
        for first in values:
            for second in values:
                if is_less(first, second):
                    return first, second
        span = dom.b - dom.a
        points = [dom.a + span * Fraction(i, pieces) for i in range(pieces + 1)]
        pieces *= 2


def level_crossing_witness(
    h: XPoly,
    dom: DomainInterval,
    unit_scale: Fraction = Fraction(1),
    level: Fraction | None = None,
) -> LevelCrossingWitness:
    """Produce g = b*h - a*unit with a root in dom, for a rational a/b in h's range.

    ``level`` fixes a/b; otherwise it is picked strictly between two sampled values.
    """
    if h.is_constant:
        raise ConstantFunction("h is constant on the domain")
    if unit_scale <= 0:
        raise ValidationError(f"unit_scale must be positive, got {unit_scale}")
    if level is None:
        low, high = _distinct_values(h, dom)
        level = rational_between(low * (1 / unit_scale), high * (1 / unit_scale))
    g = h * level.denominator - XPoly.const(level.numerator * unit_scale)
    low_report, high_report = extremum_signs(g, dom)
    if low_report.verdict is not MinSign.NEG or high_report.verdict is not MinSign.POS:
        raise ValidationError(f"Level {level} is not strictly inside the range of h")
    roots = isolate_roots(g, dom)
    logger.debug(f"level crossing witness at level {level}: {len(roots)} roots")
    return LevelCrossingWitness(g, roots[0], level)



lemma2_witness = level_crossing_witness
