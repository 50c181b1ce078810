"""Tests for Q[t] arithmetic and the sign oracle."""

import random
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest
import sympy

from dimgroups.exceptions import PrecisionExhausted, ValidationError
from dimgroups.scalar_field import (
    QQ_T,
    T_SYMBOL,
    DigitsFileOracle,
    Enclosure,
    Ordering,
    ScalarField,
    T,
    TranscendentalOracle,
    TScalar,
    approximate,
    compare,
    enclose,
    format_rational,
    format_scalar,
    parse_rational,
    parse_scalar,
    random_rational,
    rational_between,
    sign,
    using_field,
)

PI_DIGITS = "0.1415926535897932384626433832795028841971"


class AlgebraicOracle(TranscendentalOracle):
    """Pretends t = 1/2, which the sign oracle can never separate from 1/2."""

    identifier = "half"

    def _compute(self, width: Fraction) -> Enclosure:
        return Enclosure(Fraction(1, 2) - width / 2, Fraction(1, 2) + width / 2)


class TestTScalar:
    """Test the ring operations of Q[t]."""

    def test_canonical_form(self) -> None:
        """Trailing zeros are dropped and zero has no coefficients."""
        assert TScalar([1, 0, 0]).coeffs == (Fraction(1),)
        assert TScalar([0, 0]).is_zero
        assert TScalar().degree == -1

    def test_immutable(self) -> None:
        """Scalars cannot be modified after creation."""
        with pytest.raises(AttributeError):
            T.coeffs = ()  # type: ignore[misc]

    def test_ring_identities(self) -> None:
        """Products and powers expand exactly."""
        assert (T + 1) * (T - 1) == T**2 - 1
        assert (T * Fraction(1, 2)).coeffs == (Fraction(0), Fraction(1, 2))
        assert 2 - T == TScalar([2, -1])
        assert T**0 == TScalar.const(1)

    def test_gcd_and_division(self) -> None:
        """Euclidean division and the monic gcd in Q[t]."""
        quotient, remainder = (T**2 - 1).divmod(T - 1)
        assert quotient == T + 1
        assert remainder.is_zero
        assert (T**2 - 1).gcd(T * 2 - 2) == T - 1
        with pytest.raises(ValidationError):
            (T**2 + 1).exact_div(T - 1)

    def test_negative_power_rejected(self) -> None:
        """Q[t] has no inverse of t."""
        with pytest.raises(ValidationError):
            T ** (-1)

    def test_sympy_element_agrees(self) -> None:
        """Each scalar carries the matching element of sympy's QQ[t]."""
        p = TScalar([Fraction(-1, 2), 0, 3])
        assert p.element == QQ_T.from_sympy(3 * T_SYMBOL**2 - sympy.Rational(1, 2))
        assert TScalar.from_sympy(T_SYMBOL**2 - 1) == T**2 - 1
        assert TScalar.from_element(p.element * T.element) == p * T
        assert TScalar().element == QQ_T.zero

    def test_gcd_normalized_monic(self) -> None:
        """gcd is monic even when one side is a single term."""
        assert (T * 3).gcd(T**2 * 6) == T
        assert TScalar().gcd(T * 4 - 2) == T - Fraction(1, 2)
        assert TScalar().gcd(TScalar()).is_zero


class TestSign:
    """Test signs decided through the pi - 3 oracle."""

    def test_sign_of_t(self) -> None:
        """t lies between 0.14159 and 1/7."""
        assert sign(T) == 1
        assert sign(T - Fraction(14159, 100000)) == 1
        assert sign(T - Fraction(1, 7)) == -1
        assert sign(TScalar()) == 0

    def test_sign_of_rational_constant(self) -> None:
        """Constants never consult the oracle."""
        assert sign(TScalar.const(Fraction(-3, 4))) == -1

    def test_compare(self) -> None:
        """compare orders by the value at t."""
        assert compare(T, T**2) is Ordering.GREATER
        assert compare(T**2, T) is Ordering.LESS
        assert compare(T + 1, 1 + T) is Ordering.EQUAL

    def test_close_polynomial(self) -> None:
        """22/7 and 355/113 both overshoot pi."""
        assert sign(T * 7 - 1) == -1
        assert sign(T * 113 - 16) == -1

    def test_enclose(self) -> None:
        """Enclosures of t contain pi - 3 and honour the width."""
        width = Fraction(1, 10**20)
        bounds = enclose(T, width)
        assert bounds.width <= width
        assert bounds.lo < Fraction("0.1415926535897932385")
        assert bounds.hi > Fraction("0.1415926535897932384")

    def test_enclose_constant_is_exact(self) -> None:
        """Rational constants enclose to a point."""
        bounds = enclose(TScalar.const(Fraction(2, 3)), Fraction(1, 100))
        assert bounds.lo == bounds.hi == Fraction(2, 3)

    def test_enclose_rejects_nonpositive_width(self) -> None:
        """Width 0 is not an enclosure request."""
        with pytest.raises(ValidationError):
            enclose(T, Fraction(0))

    def test_approximate(self) -> None:
        """approximate tracks mpmath's pi."""
        with mpmath.mp.workprec(80):
            assert abs(approximate(T, 64) - (mpmath.pi - 3)) < mpmath.mpf(2) ** -60

    def test_rational_between(self) -> None:
        """A rational strictly between t and 1/7."""
        q = rational_between(T, TScalar.const(Fraction(1, 7)))
        assert sign(T - q) == -1
        assert q < Fraction(1, 7)

    def test_rational_between_rejects_empty(self) -> None:
        """b must exceed a."""
        with pytest.raises(ValidationError):
            rational_between(T, T)


class TestPrecision:
    """Test the refinement cap."""

    def test_algebraic_oracle_exhausts_precision(self) -> None:
        """A t that equals 1/2 leaves t - 1/2 undecided forever."""
        with using_field(ScalarField(AlgebraicOracle(), max_precision_bits=128)):
            with pytest.raises(PrecisionExhausted) as excinfo:
                sign(T - Fraction(1, 2))
        assert excinfo.value.bits == 128

    def test_cap_must_reach_first_refinement(self) -> None:
        """Caps below 64 bits are rejected."""
        with pytest.raises(ValidationError):
            ScalarField(max_precision_bits=32)

    def test_short_digits_file_exhausts(self, tmp_path: Path) -> None:
        """Five digits cannot separate t from 0.14159."""
        path = tmp_path / "digits.txt"
        path.write_text("0.14159\n")
        with using_field(ScalarField(DigitsFileOracle(path))):
            with pytest.raises(PrecisionExhausted):
                sign(T - Fraction(14159, 100000))


class TestDigitsFileOracle:
    """Test the file-backed oracle."""

    def test_digits_agree_with_pi(self, tmp_path: Path) -> None:
        """Forty digits of pi - 3 decide the same signs as mpmath."""
        path = tmp_path / "digits.txt"
        path.write_text(PI_DIGITS)
        with using_field(ScalarField(DigitsFileOracle(path))):
            assert sign(T - Fraction(1, 7)) == -1
            assert sign(T * 113 - 16) == -1

    def test_invalid_digits(self, tmp_path: Path) -> None:
        """The file must hold a decimal in (0, 1)."""
        path = tmp_path / "digits.txt"
        path.write_text("3.14159")
        with pytest.raises(ValidationError):
            DigitsFileOracle(path)


class TestTextForms:
    """Test parsing and formatting."""

    def test_format_scalar(self) -> None:
        """Terms are written as p/q*t^k."""
        assert format_scalar(TScalar([Fraction(1, 2), 0, Fraction(-1, 7)])) == "1/2 + -1/7*t^2"
        assert format_scalar(TScalar()) == "0"

    def test_parse_scalar_shorthand(self) -> None:
        """Shorthand forms parse to the same scalars."""
        assert parse_scalar("1/7 - t") == TScalar([Fraction(1, 7), -1])
        assert parse_scalar("1 - t^2") == 1 - T**2
        assert parse_scalar("3t") == T * 3
        assert parse_scalar("-t") == -T

    def test_parse_format_inverse(self) -> None:
        """The formatted text parses back to the scalar."""
        p = TScalar([Fraction(-2, 3), 0, 5, Fraction(1, 9)])
        assert parse_scalar(format_scalar(p)) == p

    @pytest.mark.parametrize("text", ["", "x", "1/", "t^", "--t"])
    def test_parse_scalar_rejects(self, text: str) -> None:
        """Malformed scalars raise ValidationError."""
        with pytest.raises(ValidationError):
            parse_scalar(text)

    def test_rationals(self) -> None:
        """Rationals are written p/q."""
        assert format_rational(Fraction(-3)) == "-3/1"
        assert parse_rational(" 6/8 ") == Fraction(3, 4)
        with pytest.raises(ValidationError):
            parse_rational("1/0")

    def test_random_rational_range(self) -> None:
        """Numerators stay in [-bound, bound] and denominators in [1, bound]."""
        rng = random.Random(7)  # noqa: S311
        for _ in range(200):
            q = random_rational(rng, 5)
            assert abs(q) <= 5
            assert q.denominator <= 5


class TestOracleNesting:
    """Test that refined enclosures stay inside coarser ones."""

    def test_enclosures_nest(self) -> None:
        """A tighter enclosure of any scalar lies within a looser one."""
        rng = random.Random(11)  # noqa: S311
        for _ in range(50):
            p = TScalar(random_rational(rng, 9) for _ in range(rng.randint(2, 6)))
            if p.is_constant:
                continue
            wide = enclose(p, Fraction(1, 2**20))
            narrow = enclose(p, Fraction(1, 2**60))
            assert narrow.is_subset_of(wide)
            assert narrow.width <= Fraction(1, 2**60)

    def test_oracle_answers_nest(self) -> None:
        """Each answer of the oracle lies inside the previous ones."""
        oracle = ScalarField().oracle
        widths = [Fraction(1, 2**bits) for bits in (10, 40, 100, 30)]
        answers = [oracle.enclose(width) for width in widths]
        assert answers[1].is_subset_of(answers[0])
        assert answers[2].is_subset_of(answers[1])
        assert answers[3] == answers[2]
