"""Tests for real number fields and their totally-positive cone."""

import random
from fractions import Fraction

import pytest

from dimgroups.exceptions import (
    DivisionByZero,
    NotFormallyReal,
    NotSquarefree,
    ReducibleMinpoly,
    ValidationError,
)
from dimgroups.numfield import (
    NumberField,
    embed_sign,
    is_order_unit,
    is_totally_positive,
    make_field,
    nf_inverse,
    order_unit_multiple,
    random_element,
    random_sum_of_squares,
    verify_extreme_simplicity,
)


@pytest.fixture
def sqrt2() -> NumberField:
    """Q(sqrt 2), embeddings -sqrt 2 < sqrt 2."""
    return make_field([-2, 0, 1])


class TestMakeField:
    """Test field construction and embedding isolation."""

    def test_quadratic(self, sqrt2: NumberField) -> None:
        """x^2 - 2 has two real embeddings and Cauchy bound 3."""
        assert sqrt2.degree == 2
        assert len(sqrt2.embeddings) == 2
        assert sqrt2.cauchy_bound == 3

    @pytest.mark.parametrize(
        ("minpoly", "count"), [([-2, 0, 0, 1], 1), ([-1, -3, 0, 1], 3)]
    )
    def test_cubic_embeddings(self, minpoly: list[int], count: int) -> None:
        """Cube root of 2 has one real embedding and x^3 - 3x - 1 has three."""
        assert len(make_field(minpoly).embeddings) == count

    def test_normalization(self) -> None:
        """Rational coefficients are cleared to a primitive integer polynomial."""
        field = make_field([Fraction(-1), Fraction(0), Fraction(1, 2)])
        assert field.minpoly == (-2, 0, 1)

    def test_not_squarefree(self) -> None:
        """(x - 1)^2 is rejected."""
        with pytest.raises(NotSquarefree):
            make_field([1, -2, 1])

    def test_not_formally_real(self) -> None:
        """x^2 + 1 has no real embedding."""
        with pytest.raises(NotFormallyReal):
            make_field([1, 0, 1])

    def test_constant_rejected(self) -> None:
        """A minimal polynomial needs degree at least 1."""
        with pytest.raises(ValidationError):
            make_field([5])


class TestArithmetic:
    """Test field operations modulo the minimal polynomial."""

    def test_reduction(self, sqrt2: NumberField) -> None:
        """beta^2 reduces to 2."""
        beta = sqrt2.generator()
        assert sqrt2.mul(beta, beta) == sqrt2.element([2])

    def test_inverse(self, sqrt2: NumberField) -> None:
        """1/sqrt 2 = sqrt 2 / 2."""
        inverse = nf_inverse(sqrt2, sqrt2.generator())
        assert inverse.coeffs == (Fraction(0), Fraction(1, 2))

    def test_inverse_of_sum(self, sqrt2: NumberField) -> None:
        """(1 + sqrt 2)(sqrt 2 - 1) = 1."""
        k = sqrt2.element([1, 1])
        assert nf_inverse(sqrt2, k) == sqrt2.element([-1, 1])

    def test_inverse_of_zero(self, sqrt2: NumberField) -> None:
        """Zero has no inverse."""
        with pytest.raises(DivisionByZero):
            nf_inverse(sqrt2, sqrt2.zero())

    def test_reducible_minpoly_exposed(self) -> None:
        """In Q[x]/(x^2 - 1) the element x - 1 shares the factor x - 1."""
        field = make_field([-1, 0, 1])
        k = field.element([-1, 1])
        with pytest.raises(ReducibleMinpoly) as excinfo:
            nf_inverse(field, k)
        assert excinfo.value.factor == ["-1/1", "1/1"]


class TestPositivity:
    """Test embedding signs and the totally-positive cone."""

    def test_embed_sign(self, sqrt2: NumberField) -> None:
        """beta is negative at the first embedding and positive at the second."""
        beta = sqrt2.generator()
        assert embed_sign(sqrt2, beta, 0) == -1
        assert embed_sign(sqrt2, beta, 1) == 1
        assert embed_sign(sqrt2, sqrt2.zero(), 0) == 0

    def test_embed_sign_index_checked(self, sqrt2: NumberField) -> None:
        """Embedding indices are 0-based and bounded."""
        with pytest.raises(ValidationError):
            embed_sign(sqrt2, sqrt2.one(), 2)

    def test_totally_positive(self, sqrt2: NumberField) -> None:
        """3 + sqrt 2 is totally positive; 1 + sqrt 2 is not."""
        assert is_totally_positive(sqrt2, sqrt2.element([3, 1]))
        assert not is_totally_positive(sqrt2, sqrt2.element([1, 1]))
        assert is_order_unit(sqrt2, sqrt2.one())

    def test_close_embedding(self, sqrt2: NumberField) -> None:
        """99/70 - sqrt 2 is tiny but negative."""
        k = sqrt2.element([Fraction(99, 70), -1])
        assert embed_sign(sqrt2, k, 1) == 1
        k = sqrt2.element([Fraction(140, 99), -1])
        assert embed_sign(sqrt2, k, 1) == -1

    def test_reducible_embedding(self) -> None:
        """embed_sign reports the exposed factor instead of a zero sign."""
        field = make_field([-1, 0, 1])
        with pytest.raises(ReducibleMinpoly):
            embed_sign(field, field.element([-1, 1]), 1)

    def test_order_unit_multiple(self, sqrt2: NumberField) -> None:
        """N - sqrt 2 is totally positive for the returned N."""
        multiple = order_unit_multiple(sqrt2, sqrt2.generator())
        assert multiple >= 2
        assert is_totally_positive(sqrt2, sqrt2.element([multiple, -1]))

    def test_sums_of_squares_are_positive(self, sqrt2: NumberField) -> None:
        """Seeded sums of squares land in the cone."""
        rng = random.Random(3)  # noqa: S311
        for _ in range(10):
            assert is_totally_positive(sqrt2, random_sum_of_squares(sqrt2, rng))

    def test_random_element_nonzero(self, sqrt2: NumberField) -> None:
        """Random draws are never zero."""
        rng = random.Random(5)  # noqa: S311
        assert all(not random_element(sqrt2, rng, 2).is_zero for _ in range(50))


class TestExtremeSimplicity:
    """Test the seeded extreme-simplicity check."""

    def test_irreducible_field_has_no_witness(self, sqrt2: NumberField) -> None:
        """No nonzero element of Q(sqrt 2) vanishes at an embedding."""
        assert verify_extreme_simplicity(sqrt2, 50, seed=1) is None

    def test_reducible_field_gives_witness(self) -> None:
        """x - 1 vanishes at the embedding 1 of Q[x]/(x^2 - 1)."""
        field = make_field([-1, 0, 1])
        witness = verify_extreme_simplicity(field, 0, seed=1, extra=[field.element([-1, 1])])
        assert witness is not None
        assert witness.factor == ["-1/1", "1/1"]

    def test_negative_sample_count(self, sqrt2: NumberField) -> None:
        """The sample count cannot be negative."""
        with pytest.raises(ValidationError):
            verify_extreme_simplicity(sqrt2, -1, seed=1)
