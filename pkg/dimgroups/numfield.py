"""Finite real algebraic extensions Q(beta) ordered by their totally-positive cone.

Elements are residues modulo the minimal polynomial and carry rational
coefficients. Real embeddings are the real roots of the minimal polynomial,
isolated by Sturm sequences and ordered by value. Irreducibility of the
minimal polynomial is never checked up front; a gcd that exposes a proper
factor raises ``ReducibleMinpoly`` at the point where the field axioms fail.
"""

import logging
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import floor

import sympy
from sympy import QQ, Poly

from .exceptions import (
    DimGroupsError,
    DivisionByZero,
    NotFormallyReal,
    NotSquarefree,
    ReducibleMinpoly,
    ValidationError,
)
from .poly_real import (
    DomainInterval,
    RootInterval,
    RootIsolation,
    XPoly,
    isolate_roots,
    refine_root,
    root_in,
)
from .scalar_field import TScalar, format_rational, random_rational, sign

logger = logging.getLogger("dimgroups.numfield")

X = sympy.Symbol("x")


def _to_sympy(coeffs: Sequence[Fraction]) -> Poly:
    """Poly over QQ from coefficients listed low to high."""
    values = [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)]
    return Poly(values or [0], X, domain=QQ)


def _from_sympy(poly: Poly) -> tuple[Fraction, ...]:
    if poly.is_zero:
        return ()
    values = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def _factor_strings(poly: Poly) -> list[str]:
    return [format_rational(c) for c in _from_sympy(poly)]


@dataclass(frozen=True, slots=True)
class NFElement:
    """Residue modulo the minimal polynomial; ``coeffs[i]`` multiplies beta^i."""

    coeffs: tuple[Fraction, ...] = ()

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def describe(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


@dataclass(frozen=True)
class NumberField:
    minpoly: tuple[int, ...]
    embeddings: RootIsolation
    cauchy_bound: Fraction

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def modulus(self) -> Poly:
        return _to_sympy([Fraction(c) for c in self.minpoly])

    def element(self, coeffs: Iterable[Fraction | int | str]) -> NFElement:
        values = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        return NFElement(_from_sympy(_to_sympy(values).rem(self.modulus)))

    def one(self) -> NFElement:
        return NFElement((Fraction(1),))

    def zero(self) -> NFElement:
        return NFElement()

    def generator(self) -> NFElement:
        return self.element([0, 1])

    def add(self, a: NFElement, b: NFElement) -> NFElement:
        return NFElement(_from_sympy(_to_sympy(a.coeffs) + _to_sympy(b.coeffs)))

    def neg(self, a: NFElement) -> NFElement:
        return NFElement(tuple(-c for c in a.coeffs))

    def sub(self, a: NFElement, b: NFElement) -> NFElement:
        return self.add(a, self.neg(b))

    def scale(self, a: NFElement, factor: Fraction | int) -> NFElement:
        return NFElement(tuple(c * factor for c in a.coeffs) if factor else ())

    def mul(self, a: NFElement, b: NFElement) -> NFElement:
        product = (_to_sympy(a.coeffs) * _to_sympy(b.coeffs)).rem(self.modulus)
        return NFElement(_from_sympy(product))

    def describe(self) -> dict[str, object]:
        return {
            "minpoly": list(self.minpoly),
            "embeddings": [root.describe() for root in self.embeddings],
        }


def make_field(minpoly: Sequence[int | Fraction | str]) -> NumberField:
    """Normalize the minimal polynomial (low to high) and isolate its real roots."""
    coefficients = [Fraction(c) if not isinstance(c, Fraction) else c for c in minpoly]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    if len(coefficients) < 2:
        raise ValidationError(f"Minimal polynomial must have degree at least 1: {list(minpoly)}")
    _, integral = _to_sympy(coefficients).clear_denoms(convert=True)
    _, primitive = integral.primitive()
    if primitive.LC() < 0:
        primitive = -primitive
    normalized = tuple(int(c) for c in reversed(primitive.all_coeffs()))
    if not primitive.is_sqf:
        raise NotSquarefree(list(normalized))
    lead = abs(normalized[-1])
    bound = 1 + Fraction(max(abs(c) for c in normalized[:-1]), lead)
    embeddings = isolate_roots(
        XPoly.from_rationals(normalized),
        DomainInterval(TScalar.const(-bound), TScalar.const(bound)),
    )
    if not embeddings.roots:
        raise NotFormallyReal(list(normalized))
    logger.debug(f"field {list(normalized)}: {len(embeddings)} real embeddings")
    return NumberField(normalized, embeddings, bound)


def nf_inverse(field: NumberField, k: NFElement) -> NFElement:
    if k.is_zero:
        raise DivisionByZero("Cannot invert the zero element")
    s, _, common = _to_sympy(k.coeffs).gcdex(field.modulus)
    if common.degree() > 0:
        raise ReducibleMinpoly(_factor_strings(common))
    scaled = s.rem(field.modulus) * (1 / common.LC())
    inverse = NFElement(_from_sympy(scaled))
    if field.mul(k, inverse) != field.one():
        raise DimGroupsError(f"Inverse check failed for {k.describe()}")
    return inverse


def _check_index(field: NumberField, index: int) -> RootInterval:
    if not 0 <= index < len(field.embeddings):
        raise ValidationError(
            f"Embedding index {index} out of range 0..{len(field.embeddings) - 1}"
        )
    return field.embeddings[index]


def embed_sign(field: NumberField, k: NFElement, index: int) -> int:
    """Sign of k at the ``index``-th real embedding (ascending root order)."""
    root = _check_index(field, index)
    if k.is_zero:
        return 0
    if len(k.coeffs) == 1:
        return 1 if k.coeffs[0] > 0 else -1
    common = _to_sympy(k.coeffs).gcd(field.modulus)
    if common.degree() > 0:
        raise ReducibleMinpoly(_factor_strings(common))
    poly = XPoly.from_rationals(k.coeffs)
    minpoly = XPoly.from_rationals(field.minpoly)
    # k has no common root with the minimal polynomial, so shrinking the root
    # interval eventually leaves k without roots on it
    while not root.is_exact and (root_in(poly, root) or poly.evaluate(root.lo).is_zero):
        root = refine_root(minpoly, root, (root.hi - root.lo).constant_value / 2)
    return sign(poly.evaluate(root.lo))


def is_totally_positive(field: NumberField, k: NFElement) -> bool:
    return all(embed_sign(field, k, j) == 1 for j in range(len(field.embeddings)))


def is_order_unit(field: NumberField, k: NFElement) -> bool:
    """Order units of the totally-positive cone are exactly its interior points."""
    return is_totally_positive(field, k)


def order_unit_multiple(field: NumberField, k: NFElement) -> int:
    """N >= 1 with N*1 - k totally positive."""
    estimate = sum(abs(c) * field.cauchy_bound**i for i, c in enumerate(k.coeffs))
    multiple = max(1, floor(estimate) + 1)
    while not is_totally_positive(field, field.sub(field.scale(field.one(), multiple), k)):
        multiple *= 2
    return multiple


def random_element(field: NumberField, rng: random.Random, bound: int = 10) -> NFElement:
    """Nonzero element with coefficients drawn by ``random_rational``."""
    while True:
        k = field.element(random_rational(rng, bound) for _ in range(field.degree))
        if not k.is_zero:
            return k


def random_sum_of_squares(
    field: NumberField, rng: random.Random, bound: int = 10, terms: int = 3
) -> NFElement:
    total = field.zero()
    for _ in range(terms):
        k = random_element(field, rng, bound)
        total = field.add(total, field.mul(k, k))
    return total


@dataclass(frozen=True, slots=True)
class SimplicityWitness:
    """Nonzero element vanishing at an embedding, with the factor it exposes."""

    element: NFElement
    embedding: int
    factor: list[str] | None

    def describe(self) -> dict[str, object]:
        return {
            "element": self.element.describe(),
            "embedding": self.embedding,
            "factor": self.factor,
        }


def verify_extreme_simplicity(
    field: NumberField,
    sample_count: int,
    seed: int,
    extra: Iterable[NFElement] = (),
    bound: int = 10,
) -> SimplicityWitness | None:
    """Check embed_sign != 0 for the ``extra`` elements, then for seeded random draws."""
    if sample_count < 0:
        raise ValidationError(f"sample_count must be non-negative, got {sample_count}")
    rng = random.Random(seed)  # noqa: S311
    candidates = list(extra) + [random_element(field, rng, bound) for _ in range(sample_count)]
    for k in candidates:
        if k.is_zero:
            continue
        for j in range(len(field.embeddings)):
            try:
                value = embed_sign(field, k, j)
            except ReducibleMinpoly as e:
                logger.warning(f"{k.describe()} exposes factor {e.factor} of {list(field.minpoly)}")
                return SimplicityWitness(k, j, e.factor)
            if value == 0:
                return SimplicityWitness(k, j, None)
    logger.info(f"{len(candidates)} elements of {list(field.minpoly)} nonzero at every embedding")
    return None
