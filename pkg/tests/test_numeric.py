import math
from fractions import Fraction as F

import pytest

from horochain.errors import ParseError
from horochain.numeric import (
    SQRT2,
    QSqrt2,
    exact_sqrt,
    format_rational,
    is_zero,
    parse_rational,
    sqrt,
)


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == 2
    assert isinstance(SQRT2 * SQRT2, F)


def test_field_operations():
    x = QSqrt2(1, 2)
    y = QSqrt2(F(1, 3), -1)
    assert (x * y) / y == x
    assert x - x == 0
    assert 1 / SQRT2 == SQRT2 / 2
    assert (x ** 3) == x * x * x


def test_sign_and_order():
    assert QSqrt2(3, -2).sign() == 1  # 3 > 2 sqrt2
    assert QSqrt2(2, -2).sign() == -1
    assert QSqrt2(-1, 1) > 0
    assert SQRT2 < F(142, 100)
    assert SQRT2 > F(141, 100)


def test_float_conversion_without_cancellation():
    # 99 - 70 sqrt2 is tiny; naive evaluation loses most digits
    x = QSqrt2(99, -70)
    assert math.isclose(float(x), 99 - 70 * math.sqrt(2), rel_tol=1e-9)
    assert float(x) == pytest.approx(1 / (99 + 70 * math.sqrt(2)), rel=1e-15)


def test_mixing_with_float_gives_float():
    assert isinstance(SQRT2 * 1.5, float)
    assert SQRT2 + 0.0 == pytest.approx(math.sqrt(2))


def test_exact_sqrt():
    assert exact_sqrt(F(9, 4)) == F(3, 2)
    assert exact_sqrt(F(1, 2)) == SQRT2 / 2
    assert exact_sqrt(3) is None
    assert exact_sqrt(QSqrt2(3, 2)) == 1 + SQRT2
    assert exact_sqrt(2.0) is None


def test_sqrt_falls_back_to_float():
    assert sqrt(3) == pytest.approx(math.sqrt(3))
    assert sqrt(8) == 2 * SQRT2


def test_is_zero():
    assert is_zero(F(0))
    assert not is_zero(F(1, 10 ** 30))
    assert is_zero(1e-15, 1e-12)


def test_parse_rational():
    assert parse_rational(" -3/6 ") == F(-1, 2)
    assert parse_rational("0.25") == F(1, 4)
    for bad in ("1/0", "abc", ""):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_format_rational():
    assert format_rational(F(6, 4)) == "3/2"
    assert format_rational(0.5) == "0.5"


def test_hash_consistent_with_fraction_collapse():
    assert hash(QSqrt2(1, 1)) == hash(QSqrt2(1, 1))
    assert QSqrt2(1, 1) - SQRT2 == F(1)
