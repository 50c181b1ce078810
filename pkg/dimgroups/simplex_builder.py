"""Inductive construction of a simple dimension group over a simplex with m extreme points.

Affine functions on the simplex are vectors of their values at the m extreme
points. Starting from rational functions u_0 = 1, u_1, ..., u_N each stage k
subtracts a constant lambda_k = t^c_k:

    v_0 = u_0,    v_k = u_k - lambda_k

and G is the rational span of the v's. Every value s_-(g), s_+(g) of an element
whose top index is k is a trace value, hence lies in

    V_k = span_Q({1} + {tau_j(v_i) : i < k} + {tau_j(u_k)})

up to the term -q_k * lambda_k. The build certifies lambda_k is outside V_k, which
keeps every s-value away from 0.

Elements of Q[t] are compared for span membership through their coordinate
vectors over the powers 1, t, ..., t^c_N, with exact rational linear algebra.
"""

import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

import mpmath
import sympy

from .exceptions import (
    DependentBasis,
    InterpolantNotFound,
    LambdaConditionFailed,
    PreconditionViolated,
    TopIndexZero,
    ValidationError,
)
from .scalar_field import (
    T,
    TScalar,
    approximate,
    enclose,
    format_rational,
    format_scalar,
    is_less,
    larger,
    random_rational,
    sign,
    smaller,
)

logger = logging.getLogger("dimgroups.simplex_builder")

Vector = tuple[Fraction, ...]


def _matrix(rows: Sequence[Sequence[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in rows])


def _rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return int(_matrix(rows).rank())


def _row_basis(rows: Sequence[Sequence[Fraction]]) -> tuple[Vector, ...]:
    """Nonzero rows of the reduced row echelon form."""
    if not rows:
        return ()
    reduced, pivots = _matrix(rows).rref()
    return tuple(
        tuple(Fraction(int(c.p), int(c.q)) for c in reduced.row(i)) for i in range(len(pivots))
    )


def _coordinates(p: TScalar, dimension: int) -> Vector:
    if p.degree >= dimension:
        raise ValidationError(f"{format_scalar(p)} exceeds t^{dimension - 1}")
    return tuple(p.coefficient(i) for i in range(dimension))


@dataclass(frozen=True)
class SimplexSpec:
    """Rational affine functions u_0..u_N on m extreme points, plus the exponents c_k."""

    m: int
    u: tuple[Vector, ...]
    schedule: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValidationError(f"m must be at least 1, got {self.m}")
        if not self.u:
            raise ValidationError("At least u_0 is required")
        object.__setattr__(self, "u", tuple(tuple(Fraction(c) for c in row) for row in self.u))
        if not self.schedule:
            object.__setattr__(self, "schedule", tuple(range(1, len(self.u))))
        for index, row in enumerate(self.u):
            if len(row) != self.m:
                raise ValidationError(f"u_{index} has {len(row)} entries, expected {self.m}")
        if any(c != 1 for c in self.u[0]):
            raise ValidationError("u_0 must be the all-ones vector")
        if len(self.schedule) != self.n:
            raise ValidationError(
                f"Schedule has {len(self.schedule)} exponents for {self.n} stages"
            )
        if any(c < 1 for c in self.schedule) or any(
            a >= b for a, b in zip(self.schedule, self.schedule[1:], strict=False)
        ):
            raise ValidationError(
                f"Schedule must be strictly increasing positive integers: {list(self.schedule)}"
            )
        for k in range(1, len(self.u)):
            expected = min(k + 1, self.m)
            if _rank(self.u[: k + 1]) != expected:
                raise DependentBasis(
                    k, f"rank of u_0..u_{k} is below {expected}; it adds no new direction"
                )

    @property
    def n(self) -> int:
        """Number of stages N."""
        return len(self.u) - 1


def demo_spec() -> SimplexSpec:
    """The m = 3, N = 8 demonstration basis."""
    rows = [
        (1, 1, 1),
        (1, 0, 0),
        (0, 1, 0),
        (1, -1, 2),
        (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)),
        (0, 0, 1),
        (2, -3, 5),
        (-1, 4, Fraction(1, 2)),
        (Fraction(3, 7), 0, Fraction(-2, 5)),
    ]
    return SimplexSpec(3, tuple(tuple(Fraction(c) for c in row) for row in rows))


@dataclass(frozen=True)
class ConstructionState:
    spec: SimplexSpec
    lambdas: tuple[TScalar, ...]
    v: tuple[tuple[TScalar, ...], ...]
    spans: tuple[tuple[Vector, ...], ...]

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def dimension(self) -> int:
        """Length of t-power coordinate vectors."""
        return (self.spec.schedule[-1] if self.spec.schedule else 0) + 1

    def coordinates(self, p: TScalar) -> Vector:
        return _coordinates(p, self.dimension)

    def lam(self, k: int) -> TScalar:
        """lambda_k; lambda_0 is 0."""
        return self.lambdas[k - 1] if k >= 1 else TScalar()

    def in_span(self, k: int, p: TScalar) -> bool:
        basis = self.spans[k - 1]
        return _rank([*basis, self.coordinates(p)]) == len(basis)


def build(spec: SimplexSpec) -> ConstructionState:
    """Run stages 1..N and certify lambda_k outside V_k at each."""
    ones = tuple(TScalar.const(1) for _ in range(spec.m))
    lambdas: list[TScalar] = []
    v: list[tuple[TScalar, ...]] = [ones]
    spans: list[tuple[Vector, ...]] = []
    dimension = (spec.schedule[-1] if spec.schedule else 0) + 1
    for k in range(1, spec.n + 1):
        lam = T ** spec.schedule[k - 1]
        u_k = tuple(TScalar.const(c) for c in spec.u[k])
        generators = [TScalar.const(1)]
        generators.extend(entry for row in v for entry in row)
        generators.extend(u_k)
        basis = _row_basis([_coordinates(p, dimension) for p in generators])
        if _rank([*basis, _coordinates(lam, dimension)]) == len(basis):
            raise LambdaConditionFailed(k)
        lambdas.append(lam)
        spans.append(basis)
        v.append(tuple(entry - lam for entry in u_k))
        logger.debug(f"stage {k}: lambda = {format_scalar(lam)}, dim V_{k} = {len(basis)}")
    logger.info(f"Built simplex construction m={spec.m}, N={spec.n}")
    return ConstructionState(spec, tuple(lambdas), tuple(v), tuple(spans))


@dataclass(frozen=True, slots=True)
class SimplexElement:
    """Coefficients q_0..q_N on v_0..v_N; trailing zeros are trimmed."""

    q: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        values = [Fraction(c) for c in self.q]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "q", tuple(values))

    @classmethod
    def basis(cls, k: int, coefficient: Fraction | int = 1) -> "SimplexElement":
        return cls((Fraction(0),) * k + (Fraction(coefficient),))

    @property
    def top(self) -> int:
        """Largest index with q_k != 0; -1 for zero."""
        return len(self.q) - 1

    @property
    def is_zero(self) -> bool:
        return not self.q

    def __add__(self, other: "SimplexElement") -> "SimplexElement":
        size = max(len(self.q), len(other.q))
        return SimplexElement(
            tuple(
                (self.q[i] if i < len(self.q) else 0) + (other.q[i] if i < len(other.q) else 0)
                for i in range(size)
            )
        )

    def __neg__(self) -> "SimplexElement":
        return SimplexElement(tuple(-c for c in self.q))

    def __sub__(self, other: "SimplexElement") -> "SimplexElement":
        return self + (-other)

    def scale(self, factor: Fraction | int) -> "SimplexElement":
        return SimplexElement(tuple(c * factor for c in self.q))

    def describe(self) -> list[str]:
        return [format_rational(c) for c in self.q]


def _check_element(state: ConstructionState, g: SimplexElement) -> None:
    if g.top > state.n:
        raise ValidationError(f"Element has {len(g.q)} coefficients; the state has N={state.n}")


def trace(state: ConstructionState, g: SimplexElement, j: int) -> TScalar:
    """tau_j(g) for extreme point j in 1..m."""
    if not 1 <= j <= state.m:
        raise ValidationError(f"Extreme point index {j} outside 1..{state.m}")
    _check_element(state, g)
    value = TScalar()
    for i, q in enumerate(g.q):
        if q:
            value = value + state.v[i][j - 1] * q
    return value


def traces(state: ConstructionState, g: SimplexElement) -> list[TScalar]:
    return [trace(state, g, j) for j in range(1, state.m + 1)]


@dataclass(frozen=True, slots=True)
class SBounds:
    s_minus: TScalar
    s_plus: TScalar
    argmin: int
    argmax: int

    def describe(self) -> dict[str, object]:
        return {
            "s_minus": format_scalar(self.s_minus),
            "s_plus": format_scalar(self.s_plus),
            "argmin": self.argmin,
            "argmax": self.argmax,
        }


def s_bounds(state: ConstructionState, g: SimplexElement) -> SBounds:
    """Exact min and max over extreme points; ties go to the smallest index."""
    values = traces(state, g)
    argmin = argmax = 1
    for j, value in enumerate(values[1:], start=2):
        if is_less(value, values[argmin - 1]):
            argmin = j
        if is_less(values[argmax - 1], value):
            argmax = j
    return SBounds(values[argmin - 1], values[argmax - 1], argmin, argmax)


@dataclass(frozen=True, slots=True)
class CosetCheck:
    passed: bool
    top: int
    minus_in_span: bool
    plus_in_span: bool

    def describe(self) -> dict[str, object]:
        return {
            "passed": self.passed,
            "top": self.top,
            "minus_in_span": self.minus_in_span,
            "plus_in_span": self.plus_in_span,
        }


def verify_coset(state: ConstructionState, g: SimplexElement) -> CosetCheck:
    """Check s_-(g) + q_k*lambda_k and s_+(g) + q_k*lambda_k both lie in V_k."""
    _check_element(state, g)
    k = g.top
    if k < 1:
        raise TopIndexZero(f"{g.describe()} is a rational multiple of v_0")
    bounds = s_bounds(state, g)
    shift = state.lam(k) * g.q[k]
    minus_ok = state.in_span(k, bounds.s_minus + shift)
    plus_ok = state.in_span(k, bounds.s_plus + shift)
    if not (minus_ok and plus_ok):
        logger.warning(f"Coset check failed for {g.describe()}")
    return CosetCheck(minus_ok and plus_ok, k, minus_ok, plus_ok)


class SimplexVerdict(StrEnum):
    ZERO = "ZERO"
    POS = "POS"
    NEG = "NEG"
    MIXED = "MIXED"
    VIOLATION = "VIOLATION"


def classify(state: ConstructionState, g: SimplexElement) -> SimplexVerdict:
    values = traces(state, g)
    if g.is_zero:
        return SimplexVerdict.ZERO
    signs = {sign(value) for value in values}
    if 0 in signs:
        return SimplexVerdict.VIOLATION
    if signs == {1}:
        return SimplexVerdict.POS
    if signs == {-1}:
        return SimplexVerdict.NEG
    return SimplexVerdict.MIXED


@dataclass
class _Sandwich:
    lower: list[list[TScalar]] = field(default_factory=list)
    upper: list[list[TScalar]] = field(default_factory=list)

    def holds(self, values: Sequence[TScalar]) -> bool:
        return all(
            all(is_less(low[j], value) for low in self.lower)
            and all(is_less(value, high[j]) for high in self.upper)
            for j, value in enumerate(values)
        )


def interpolate(
    state: ConstructionState,
    g1: SimplexElement,
    g2: SimplexElement,
    h1: SimplexElement,
    h2: SimplexElement,
    max_bits: int = 256,
) -> SimplexElement:
    """z with g_i < z < h_l at every extreme point, verified exactly before returning."""
    sandwich = _Sandwich(
        [traces(state, g1), traces(state, g2)], [traces(state, h1), traces(state, h2)]
    )
    for j in range(state.m):
        for low in sandwich.lower:
            for high in sandwich.upper:
                if not is_less(low[j], high[j]):
                    raise PreconditionViolated(
                        f"Lower bound not below upper bound at extreme point {j + 1}"
                    )
    targets = [
        (larger(g1_j, g2_j) + smaller(h1_j, h2_j)) * Fraction(1, 2)
        for g1_j, g2_j, h1_j, h2_j in zip(*sandwich.lower, *sandwich.upper, strict=True)
    ]
    columns = min(state.n + 1, state.m)
    work_bits = max_bits + 32
    with mpmath.mp.workprec(work_bits):
        matrix = mpmath.matrix(
            [
                [approximate(state.v[i][j], work_bits) for i in range(columns)]
                for j in range(state.m)
            ]
        )
        rhs = mpmath.matrix([approximate(p, work_bits) for p in targets])
        if columns == state.m:
            solution = mpmath.lu_solve(matrix, rhs)
        else:
            solution, _ = mpmath.qr_solve(matrix, rhs)
        attempts = 0
        bits = 16
        while bits <= max_bits:
            attempts += 1
            scale = 2**bits
            z = SimplexElement(
                tuple(
                    Fraction(int(mpmath.nint(solution[i] * scale)), scale) for i in range(columns)
                )
            )
            if sandwich.holds(traces(state, z)):
                logger.debug(f"interpolant found with {bits}-bit coefficients")
                return z
            bits *= 2
    raise InterpolantNotFound(attempts)


def random_element(
    state: ConstructionState, rng: random.Random, bound: int = 10
) -> SimplexElement:
    """Nonzero element with ``random_rational`` coefficients on v_0..v_N."""
    while True:
        g = SimplexElement(tuple(random_rational(rng, bound) for _ in range(state.n + 1)))
        if not g.is_zero:
            return g


def random_quadruple(
    state: ConstructionState, rng: random.Random, bound: int = 10
) -> tuple[SimplexElement, SimplexElement, SimplexElement, SimplexElement]:
    """(g1, g2, h1, h2) with every g below every h, via h_l = w_l + N*v_0."""
    g1, g2 = random_element(state, rng, bound), random_element(state, rng, bound)
    w1, w2 = random_element(state, rng, bound), random_element(state, rng, bound)
    gap = Fraction(0)
    for low in (g1, g2):
        for high in (w1, w2):
            for a, b in zip(traces(state, low), traces(state, high), strict=True):
                gap = max(gap, enclose(a - b, Fraction(1, 256)).hi)
    lift = SimplexElement.basis(0, int(gap) + 1 + rng.randint(0, bound))
    return g1, g2, w1 + lift, w2 + lift


def export_state(state: ConstructionState) -> dict[str, object]:
    """JSON-ready record of the construction; spans use t-power coordinates."""
    return {
        "m": state.m,
        "n": state.n,
        "schedule": list(state.spec.schedule),
        "u": [[format_rational(c) for c in row] for row in state.spec.u],
        "lambdas": [format_scalar(lam) for lam in state.lambdas],
        "v": [[format_scalar(entry) for entry in row] for row in state.v],
        "powers": list(range(state.dimension)),
        "spans": [
            {"stage": k, "basis": [[format_rational(c) for c in row] for row in basis]}
            for k, basis in enumerate(state.spans, start=1)
        ],
    }
