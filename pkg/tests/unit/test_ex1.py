"""Tests for subgroups of R^n generated through t."""

import random
from fractions import Fraction

import pytest

from dimgroups.ex1 import (
    Ex1Element,
    Ex1Group,
    Ex1Verdict,
    GeneratorMode,
    classify,
    coordinates,
    extreme_simplicity_scan,
    nearest_element,
    order_unit_multiple,
    scan_elements,
)
from dimgroups.exceptions import ValidationError
from dimgroups.scalar_field import T, TScalar


@pytest.fixture
def std_group() -> Ex1Group:
    """e_1, e_2 and E = (t, t^2)."""
    return Ex1Group.standard(2, GeneratorMode.STD_PLUS_E)


@pytest.fixture
def unit_group() -> Ex1Group:
    """u = (1, 1) and E = (t, t^2)."""
    return Ex1Group.standard(2, GeneratorMode.UNIT_PLUS_E)


class TestGroup:
    """Test group construction."""

    def test_standard_alphas(self, std_group: Ex1Group) -> None:
        """alpha_j = t^j."""
        assert std_group.alphas == (T, T**2)
        assert std_group.rank == 3

    def test_unit_mode_rank(self, unit_group: Ex1Group) -> None:
        """The unit mode has two generators."""
        assert unit_group.rank == 2
        assert len(unit_group.generators()) == 2

    def test_rational_alpha_rejected(self) -> None:
        """Every alpha must involve t."""
        with pytest.raises(ValidationError):
            Ex1Group(2, (T, TScalar.const(Fraction(1, 2))))

    def test_alpha_count_checked(self) -> None:
        """n alphas are required."""
        with pytest.raises(ValidationError):
            Ex1Group(3, (T, T**2))
        with pytest.raises(ValidationError):
            Ex1Group.standard(0)

    def test_element_length_checked(self, std_group: Ex1Group) -> None:
        """Elements carry one coefficient per generator."""
        with pytest.raises(ValidationError):
            std_group.element([1, 2])

    def test_element_arithmetic(self) -> None:
        """Elements add coordinatewise."""
        a = Ex1Element((1, 2, 3))
        b = Ex1Element((0, -2, 1))
        assert (a + b).coeffs == (1, 0, 4)
        assert (a - a).is_zero
        assert a.scale(2).coeffs == (2, 4, 6)


class TestClassify:
    """Test coordinates and the classification verdicts."""

    def test_coordinates(self, std_group: Ex1Group, unit_group: Ex1Group) -> None:
        """Pure traces are m_j + m*alpha_j and q + m*alpha_j."""
        assert coordinates(std_group, std_group.element([1, 0, 2])) == [1 + T * 2, T**2 * 2]
        assert coordinates(unit_group, unit_group.element([3, -1])) == [3 - T, 3 - T**2]

    @pytest.mark.parametrize(
        ("coeffs", "verdict"),
        [
            ([0, 0, 0], Ex1Verdict.ZERO),
            ([0, 0, 1], Ex1Verdict.POSITIVE),
            ([-1, -1, -1], Ex1Verdict.NEGATIVE),
            ([-1, 0, 7], Ex1Verdict.MIXED),
            ([1, 0, 0], Ex1Verdict.BOUNDARY),
        ],
    )
    def test_classify(self, std_group: Ex1Group, coeffs: list[int], verdict: Ex1Verdict) -> None:
        """Each verdict is reached by a small element."""
        assert classify(std_group, std_group.element(coeffs)) is verdict

    def test_unit_mode_has_no_boundary(self, unit_group: Ex1Group) -> None:
        """q + m*t^j vanishes only for q = m = 0."""
        assert classify(unit_group, unit_group.element([1, -8])) is Ex1Verdict.MIXED
        assert classify(unit_group, unit_group.element([0, 0])) is Ex1Verdict.ZERO


class TestScan:
    """Test the bounded search for boundary elements."""

    def test_scan_order(self, std_group: Ex1Group) -> None:
        """Small values come first and the first coefficient varies fastest."""
        first = [g.coeffs for g in list(scan_elements(std_group, 1))[:3]]
        assert first == [(1, 0, 0), (-1, 0, 0), (0, 1, 0)]

    def test_scan_size(self, unit_group: Ex1Group) -> None:
        """All nonzero pairs in [-2, 2]^2 are visited once."""
        assert len(list(scan_elements(unit_group, 2))) == 24

    def test_std_mode_finds_e1(self, std_group: Ex1Group) -> None:
        """e_1 has a vanishing second coordinate."""
        witness = extreme_simplicity_scan(std_group, 1)
        assert witness is not None
        assert witness.coeffs == (1, 0, 0)

    def test_unit_mode_finds_nothing(self, unit_group: Ex1Group) -> None:
        """No small element of the unit mode vanishes anywhere."""
        assert extreme_simplicity_scan(unit_group, 5) is None

    def test_scan_bound_checked(self, std_group: Ex1Group) -> None:
        """The bound must be positive."""
        with pytest.raises(ValidationError):
            extreme_simplicity_scan(std_group, 0)


class TestOrderUnit:
    """Test order-unit multiples and the density probe."""

    def test_order_unit_multiple(self, std_group: Ex1Group) -> None:
        """N*E dominates (1, 1) once N*t^2 > 1, so N >= 50."""
        g = std_group.element([0, 0, 1])
        h = std_group.element([1, 1, 0])
        multiple = order_unit_multiple(std_group, g, h)
        assert multiple >= 50
        assert classify(std_group, g.scale(multiple) - h) is Ex1Verdict.POSITIVE

    def test_order_unit_requires_positive(self, std_group: Ex1Group) -> None:
        """A boundary element is not an order unit."""
        with pytest.raises(ValidationError):
            order_unit_multiple(std_group, std_group.element([1, 0, 0]), std_group.zero())

    def test_nearest_element(self, unit_group: Ex1Group) -> None:
        """The closest small element to (1, 1) is u itself."""
        nearest = nearest_element(unit_group, [Fraction(1), Fraction(1)], 3)
        assert nearest.element.coeffs == (1, 0)
        assert nearest.distance == 0

    def test_nearest_element_target_size(self, unit_group: Ex1Group) -> None:
        """The target needs n coordinates."""
        with pytest.raises(ValidationError):
            nearest_element(unit_group, [Fraction(1)], 3)


MIRROR = {
    Ex1Verdict.POSITIVE: Ex1Verdict.NEGATIVE,
    Ex1Verdict.NEGATIVE: Ex1Verdict.POSITIVE,
    Ex1Verdict.ZERO: Ex1Verdict.ZERO,
    Ex1Verdict.MIXED: Ex1Verdict.MIXED,
    Ex1Verdict.BOUNDARY: Ex1Verdict.BOUNDARY,
}


class TestProperties:
    """Seeded checks of linearity and negation."""

    @pytest.mark.parametrize("mode", list(GeneratorMode))
    def test_negation_mirrors_classification(self, mode: GeneratorMode) -> None:
        """classify(-g) swaps POSITIVE and NEGATIVE and keeps the rest."""
        group = Ex1Group.standard(3, mode)
        rng = random.Random(19)  # noqa: S311
        for _ in range(60):
            g = group.element([rng.randint(-4, 4) for _ in range(group.rank)])
            assert classify(group, -g) is MIRROR[classify(group, g)]
            assert classify(group, g.scale(-1)) is classify(group, -g)

    @pytest.mark.parametrize("mode", list(GeneratorMode))
    def test_coordinates_are_additive(self, mode: GeneratorMode) -> None:
        """Coordinates of g + h are the sums of the coordinates."""
        group = Ex1Group.standard(3, mode)
        rng = random.Random(23)  # noqa: S311
        for _ in range(60):
            g = group.element([rng.randint(-9, 9) for _ in range(group.rank)])
            h = group.element([rng.randint(-9, 9) for _ in range(group.rank)])
            summed = coordinates(group, g + h)
            pairs = zip(coordinates(group, g), coordinates(group, h), strict=True)
            assert summed == [a + b for a, b in pairs]
