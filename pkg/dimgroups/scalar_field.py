"""Exact arithmetic and decidable order for the ring Q[t].

``t`` is a fixed transcendental real in (0, 1), known only through an oracle that
hands out shrinking rational enclosures of it. Every nonzero element of Q[t] is
nonzero at ``t``, so its sign is always decided after finitely many refinements;
the precision cap turns a misconfigured oracle into a ``PrecisionExhausted``
error instead of a hang.
"""

import logging
import random
import re
import threading
from abc import ABC, abstractmethod
from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from pathlib import Path
from typing import Any

import mpmath
import sympy
from sympy import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement

from .exceptions import PrecisionExhausted, ValidationError

logger = logging.getLogger("dimgroups.scalar_field")

START_PRECISION_BITS = 64
DEFAULT_MAX_PRECISION_BITS = 16384

Rational = Fraction
Coefficient = int | Fraction

T_SYMBOL = sympy.Symbol("t")
QQ_T = QQ[T_SYMBOL]


class Ordering(StrEnum):
    LESS = "LESS"
    EQUAL = "EQUAL"
    GREATER = "GREATER"


@dataclass(frozen=True, slots=True)
class Enclosure:
    """Closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValidationError(f"Empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_subset_of(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersect(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(max(self.lo, other.lo), min(self.hi, other.hi))


def _as_fraction(value: Coefficient) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Expected an int or Fraction coefficient, got {type(value).__name__}")


def _to_ground(value: Fraction) -> Any:
    return QQ(value.numerator, value.denominator)


def _from_ground(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class TScalar:
    """Element of Q[t]; ``coeffs[i]`` is the coefficient of t^i.

    Instances are immutable and always canonical: no trailing zero coefficients,
    so the zero element has an empty coefficient tuple. Ring arithmetic runs on
    ``element``, the same value as a sympy polynomial over ``QQ[t]``.
    """

    __slots__ = ("coeffs", "element")

    coeffs: tuple[Fraction, ...]
    element: PolyElement

    def __init__(self, coeffs: Iterable[Coefficient] = ()) -> None:
        values = [_as_fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        terms = {(k,): _to_ground(c) for k, c in enumerate(values) if c}
        self._assign(tuple(values), QQ_T.ring.from_dict(terms))

    def _assign(self, coeffs: tuple[Fraction, ...], element: PolyElement) -> None:
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "element", element)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("TScalar is immutable")

    @classmethod
    def from_element(cls, element: PolyElement) -> "TScalar":
        """Wrap an element of the sympy ring ``QQ[t]``."""
        terms = {monom[0]: _from_ground(c) for monom, c in element.items()}
        scalar = object.__new__(cls)
        size = max(terms, default=-1) + 1
        scalar._assign(tuple(terms.get(k, Fraction(0)) for k in range(size)), element)
        return scalar

    @classmethod
    def from_sympy(cls, expr: sympy.Expr) -> "TScalar":
        return cls.from_element(QQ_T.from_sympy(expr))

    @classmethod
    def const(cls, value: Coefficient) -> "TScalar":
        return cls((value,))

    @classmethod
    def t_power(cls, k: int, coefficient: Coefficient = 1) -> "TScalar":
        if k < 0:
            raise ValidationError(f"Negative power of t: {k}")
        return cls([0] * k + [coefficient])

    @classmethod
    def coerce(cls, value: "TScalar | Coefficient") -> "TScalar":
        if isinstance(value, TScalar):
            return value
        return cls.const(value)

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
    def constant_value(self) -> Fraction:
        """Value of a constant element; raises for elements involving t."""
        if not self.is_constant:
            raise ValidationError(f"{format_scalar(self)} is not a rational constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "TScalar | Coefficient") -> "TScalar":
        return TScalar.from_element(self.element + TScalar.coerce(other).element)

    __radd__ = __add__

    def __neg__(self) -> "TScalar":
        return TScalar.from_element(-self.element)

    def __sub__(self, other: "TScalar | Coefficient") -> "TScalar":
        return TScalar.from_element(self.element - TScalar.coerce(other).element)

    def __rsub__(self, other: "TScalar | Coefficient") -> "TScalar":
        return TScalar.coerce(other) - self

    def __mul__(self, other: "TScalar | Coefficient") -> "TScalar":
        if not isinstance(other, TScalar):
            return TScalar.from_element(self.element.mul_ground(_to_ground(_as_fraction(other))))
        return TScalar.from_element(self.element * other.element)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "TScalar":
        if exponent < 0:
            raise ValidationError("Q[t] has no negative powers")
        if exponent == 0:
            return TScalar.const(1)
        return TScalar.from_element(self.element**exponent)

    def scale_down(self, divisor: Coefficient) -> "TScalar":
        divisor = _as_fraction(divisor)
        if divisor == 0:
            raise ZeroDivisionError("division of a TScalar by zero")
        return TScalar.from_element(self.element.quo_ground(_to_ground(divisor)))

    def divmod(self, other: "TScalar") -> tuple["TScalar", "TScalar"]:
        """Euclidean division in Q[t]."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero element of Q[t]")
        quotient, remainder = self.element.div(other.element)
        return TScalar.from_element(quotient), TScalar.from_element(remainder)

    def exact_div(self, other: "TScalar") -> "TScalar":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero element of Q[t]")
        try:
            return TScalar.from_element(self.element.exquo(other.element))
        except ExactQuotientFailed as e:
            raise ValidationError(
                f"{format_scalar(other)} does not divide {format_scalar(self)}"
            ) from e

    def monic(self) -> "TScalar":
        return TScalar.from_element(self.element.monic())

    def gcd(self, other: "TScalar") -> "TScalar":
        """Monic gcd in Q[t]; gcd(0, 0) is 0."""
        return TScalar.from_element(self.element.gcd(other.element).monic())

    def evaluate(self, t_range: Enclosure, powers: list[Enclosure] | None = None) -> Enclosure:
        """Interval containing p(t) for every t in ``t_range``.

        ``powers[k]`` may supply a precomputed enclosure of t^k over ``t_range``.
        """
        lo = hi = Fraction(0)
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if powers is not None and k < len(powers):
                power = powers[k]
            else:
                power = _interval_power(t_range, k)
            if c > 0:
                lo += c * power.lo
                hi += c * power.hi
            elif c < 0:
                lo += c * power.hi
                hi += c * power.lo
        return Enclosure(lo, hi)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TScalar):
            return self.coeffs == other.coeffs
        if isinstance(other, int | Fraction):
            return self.coeffs == TScalar.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"TScalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


T = TScalar.t_power(1)


def _interval_power(base: Enclosure, k: int) -> Enclosure:
    if k == 0:
        return Enclosure(Fraction(1), Fraction(1))
    lo_k, hi_k = base.lo**k, base.hi**k
    if base.lo >= 0 or k % 2 == 1:
        return Enclosure(lo_k, hi_k)
    if base.hi <= 0:
        return Enclosure(hi_k, lo_k)
    return Enclosure(Fraction(0), max(lo_k, hi_k))


def _bits_for_width(width: Fraction) -> int:
    """Smallest b with 2^-b <= width."""
    ceiling = -(-width.denominator // width.numerator)
    return max((ceiling - 1).bit_length(), 0)


class TranscendentalOracle(ABC):
    """Source of rational enclosures of the transcendental generator t.

    Enclosures handed out by one oracle form a nested chain: each answer is the
    intersection of the fresh computation with everything returned before. The
    cache is guarded by a lock, so one oracle can be shared between threads.
    """

    identifier: str = "custom"

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._best: Enclosure | None = None

    def enclose(self, width: Fraction) -> Enclosure:
        if width <= 0:
            raise ValidationError(f"Enclosure width must be positive, got {width}")
        with self._lock:
            best = self._best
            if best is not None and best.width <= width:
                return best
            fresh = self._compute(width)
            if best is not None:
                fresh = fresh.intersect(best)
            self._best = fresh
            return fresh

    @abstractmethod
    def _compute(self, width: Fraction) -> Enclosure:
        """Enclosure of t of width at most ``width`` with t strictly inside."""


class PiMinusThreeOracle(TranscendentalOracle):
    """t = pi - 3, from mpmath's arbitrary-precision pi."""

    identifier = "pi_minus_3"

    # mpmath's pi at p bits is within a few ulps; the guard bits keep that
    # error well inside the radius handed out.
    GUARD_BITS = 16

    def _compute(self, width: Fraction) -> Enclosure:
        bits = max(_bits_for_width(width), 8)
        with mpmath.mp.workprec(bits + self.GUARD_BITS):
            approx = +mpmath.mp.pi
        center = mpf_to_fraction(approx) - 3
        radius = Fraction(1, 2 ** (bits + 1))
        logger.debug(f"pi_minus_3 oracle refined to {bits} bits")
        return Enclosure(center - radius, center + radius)


class DigitsFileOracle(TranscendentalOracle):
    """t read from a file holding its decimal expansion, e.g. ``0.14159265...``.

    The caller asserts that the digits belong to a transcendental number in (0, 1).
    """

    identifier = "digits_file"

    def __init__(self, path: str | Path) -> None:
        super().__init__()
        text = Path(path).read_text(encoding="utf-8")
        digits = "".join(text.split())
        match = re.fullmatch(r"0?\.(\d+)", digits)
        if match is None:
            raise ValidationError(f"Digits file {path} must contain a decimal in (0, 1)")
        self.path = Path(path)
        self._digits = match.group(1)
        self._value = Fraction(int(self._digits), 10 ** len(self._digits))

    def _compute(self, width: Fraction) -> Enclosure:
        places = 1
        while Fraction(3, 10**places) > width:
            places += 1
        if places >= len(self._digits):
            raise PrecisionExhausted(
                f"Digits file {self.path} holds {len(self._digits)} digits; "
                f"width {float(width):.3g} needs {places + 1}"
            )
        unit = Fraction(1, 10**places)
        truncated = Fraction(int(self._digits[:places]), 10**places)
        return Enclosure(truncated - unit, truncated + 2 * unit)


def mpf_to_fraction(value: mpmath.mpf) -> Fraction:
    if value == 0:
        return Fraction(0)
    man, exp = value.man_exp
    magnitude = Fraction(abs(int(man))) * Fraction(2) ** int(exp)
    return -magnitude if value < 0 else magnitude


class ScalarField:
    """Q[t] ordered through a transcendental oracle."""

    def __init__(
        self,
        oracle: TranscendentalOracle | None = None,
        max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS,
    ) -> None:
        if max_precision_bits < START_PRECISION_BITS:
            raise ValidationError(
                f"max_precision_bits must be at least {START_PRECISION_BITS}, "
                f"got {max_precision_bits}"
            )
        self.oracle = oracle if oracle is not None else PiMinusThreeOracle()
        self.max_precision_bits = max_precision_bits
        self._powers_lock = threading.Lock()
        self._powers: dict[int, tuple[Enclosure, list[Enclosure]]] = {}

    def _t_powers(self, bits: int, degree: int) -> tuple[Enclosure, list[Enclosure]]:
        """Enclosure of t at ``bits`` together with enclosures of t^0..t^degree."""
        with self._powers_lock:
            cached = self._powers.get(bits)
            if cached is None:
                t_range = self.oracle.enclose(Fraction(1, 2**bits))
                cached = (t_range, [Enclosure(Fraction(1), Fraction(1))])
                # older entries at higher precision may now be wider than this one
                for stale in [b for b in self._powers if b > bits]:
                    del self._powers[stale]
                self._powers[bits] = cached
            t_range, powers = cached
            while len(powers) <= degree:
                powers.append(_interval_power(t_range, len(powers)))
            return t_range, powers

    def _precisions(self) -> Iterator[int]:
        bits = START_PRECISION_BITS
        while bits <= self.max_precision_bits:
            yield bits
            bits *= 2

    def sign(self, p: TScalar) -> int:
        if p.is_zero:
            return 0
        if p.is_constant:
            return 1 if p.coeffs[0] > 0 else -1
        for bits in self._precisions():
            value = p.evaluate(*self._t_powers(bits, p.degree))
            if value.lo > 0:
                return 1
            if value.hi < 0:
                return -1
            logger.debug(f"sign of {format_scalar(p)} undecided at {bits} bits")
        raise PrecisionExhausted(
            f"Sign of {format_scalar(p)} undecided at {self.max_precision_bits} bits "
            f"(oracle {self.oracle.identifier})",
            bits=self.max_precision_bits,
        )

    def compare(self, a: TScalar, b: TScalar) -> Ordering:
        s = self.sign(a - b)
        if s < 0:
            return Ordering.LESS
        if s > 0:
            return Ordering.GREATER
        return Ordering.EQUAL

    def enclose(self, p: TScalar, width: Fraction) -> Enclosure:
        if width <= 0:
            raise ValidationError(f"Enclosure width must be positive, got {width}")
        if p.is_constant:
            value = p.constant_value
            return Enclosure(value, value)
        for bits in self._precisions():
            value = p.evaluate(*self._t_powers(bits, p.degree))
            if value.width <= width:
                return value
        raise PrecisionExhausted(
            f"Could not enclose {format_scalar(p)} to width {float(width):.3g} "
            f"within {self.max_precision_bits} bits",
            bits=self.max_precision_bits,
        )


_field_lock = threading.Lock()
_active: ScalarField | None = None


def active_field() -> ScalarField:
    global _active
    with _field_lock:
        if _active is None:
            _active = ScalarField()
        return _active


def configure(
    oracle: TranscendentalOracle | None = None,
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS,
) -> ScalarField:
    """Install the oracle used by the module-level sign/compare/enclose."""
    global _active
    field = ScalarField(oracle, max_precision_bits)
    with _field_lock:
        _active = field
    logger.debug(
        f"Scalar field configured: oracle={field.oracle.identifier}, "
        f"max_precision_bits={max_precision_bits}"
    )
    return field


@contextmanager
def using_field(field: ScalarField) -> Iterator[ScalarField]:
    global _active
    with _field_lock:
        previous = _active
        _active = field
    try:
        yield field
    finally:
        with _field_lock:
            _active = previous


def sign(p: TScalar) -> int:
    return active_field().sign(p)


def compare(a: TScalar, b: TScalar) -> Ordering:
    return active_field().compare(a, b)


def enclose(p: TScalar, width: Fraction) -> Enclosure:
    return active_field().enclose(p, width)


def is_less(a: TScalar, b: TScalar) -> bool:
    return compare(a, b) is Ordering.LESS


def smaller(a: TScalar, b: TScalar) -> TScalar:
    return b if is_less(b, a) else a


def larger(a: TScalar, b: TScalar) -> TScalar:
    return b if is_less(a, b) else a


def rational_between(a: TScalar, b: TScalar) -> Fraction:
    """A rational strictly between a < b, with a small denominator when possible."""
    if not is_less(a, b):
        raise ValidationError(f"Empty interval ({format_scalar(a)}, {format_scalar(b)})")
    middle = (a + b) * Fraction(1, 2)
    if middle.is_constant:
        return middle.constant_value
    width = Fraction(1, 4)
    while True:
        approx = enclose(middle, width).midpoint
        limit = 2
        while limit <= approx.denominator:
            candidate = approx.limit_denominator(limit)
            if is_less(a, TScalar.const(candidate)) and is_less(TScalar.const(candidate), b):
                return candidate
            limit *= 2
        candidate = approx
        if is_less(a, TScalar.const(candidate)) and is_less(TScalar.const(candidate), b):
            return candidate
        width /= 16


def approximate(p: TScalar, bits: int = 128) -> mpmath.mpf:
    """Floating value of p(t) with roughly ``bits`` correct bits."""
    value = enclose(p, Fraction(1, 2**bits)).midpoint
    with mpmath.mp.workprec(bits + 8):
        return mpmath.mpf(value.numerator) / value.denominator


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"Invalid rational '{text}': {e}") from e


def random_rational(rng: random.Random, bound: int) -> Fraction:
    """Numerator uniform in [-bound, bound], denominator uniform in [1, bound]."""
    numerator = rng.randint(-bound, bound)
    return Fraction(numerator, rng.randint(1, bound))


def format_scalar(p: TScalar) -> str:
    """Textual form ``"1/2 + -1/7*t^2"``; zero is ``"0"``."""
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        terms.append(format_rational(c) if k == 0 else f"{format_rational(c)}*t^{k}")
    return " + ".join(terms) if terms else "0"


_TERM = re.compile(r"(-?)(\d+(?:/\d+)?)?(?:\*?(t)(?:\^(\d+))?)?")


def parse_scalar(text: str) -> TScalar:
    """Parse the textual form; also accepts shorthand such as ``t``, ``1 - t^2``, ``3t``."""
    compact = "".join(text.split())
    if compact.startswith("+"):
        compact = compact[1:]
    if not compact:
        raise ValidationError("Empty scalar expression")
    compact = re.sub(r"(?<=[^+])-", "+-", compact)
    result = TScalar()
    for term in compact.split("+"):
        match = _TERM.fullmatch(term)
        if match is None or not term or term == "-" or (match[2] is None and match[3] is None):
            raise ValidationError(f"Invalid scalar term '{term}' in '{text}'")
        negative, coefficient, variable, power = match.groups()
        value = Fraction(coefficient) if coefficient else Fraction(1)
        if negative:
            value = -value
        if variable is None:
            result = result + value
        else:
            result = result + TScalar.t_power(int(power) if power else 1, value)
    return result
