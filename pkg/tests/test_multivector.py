from fractions import Fraction as F

import pytest

from horochain.errors import ParseError
from horochain.multivector import (
    MAX_DIM,
    Multivector,
    blade_name,
    conjugate,
    format_multivector,
    gp,
    grade,
    involute,
    lift,
    norm2,
    parse_multivector,
    reverse,
    scalar_part,
    vector_inverse,
    versor_inverse,
)


def e(i, dim=3):
    return Multivector.basis(dim, i)


def test_generator_squares():
    for i in (1, 2, 3):
        assert gp(e(i), e(i)) == -1


def test_anticommutation():
    e12 = Multivector.blade(3, 0b11)
    assert gp(e(1), e(2)) == e12
    assert gp(e(2), e(1)) == -e12


def test_sum_square():
    v = e(1) + e(2)
    assert gp(v, v) == -2


def test_reverse_and_conjugate_examples():
    e12 = gp(e(1), e(2))
    assert reverse(e12) == gp(e(2), e(1)) == -e12
    assert conjugate(e(1)) == -e(1)
    assert scalar_part(gp(e(1), -e(1))) == 1


def test_grade_signs():
    # grades 0..3 of Cl(3)
    x = Multivector(3, range(1, 9))
    signs_rev = {0: 1, 1: 1, 2: -1, 3: -1}
    signs_conj = {0: 1, 1: -1, 2: -1, 3: 1}
    for mask in range(8):
        g = bin(mask).count("1")
        assert reverse(x)[mask] == signs_rev[g] * x[mask]
        assert conjugate(x)[mask] == signs_conj[g] * x[mask]
        assert involute(x)[mask] == (-1) ** g * x[mask]


def test_vector_inverse_examples():
    assert vector_inverse(e(1)) == -e(1)
    assert vector_inverse(3 * e(2)) == -e(2) / 3
    v = e(1) + e(2)
    assert vector_inverse(v) == -v / 2
    assert gp(v, vector_inverse(v)) == 1


def test_vector_inverse_errors():
    with pytest.raises(ZeroDivisionError):
        vector_inverse(Multivector.zero(2))
    with pytest.raises(ValueError):
        vector_inverse(Multivector.scalar(2, 1))


def test_versor_inverse():
    x = gp(e(1) + 2 * e(2), e(3) - e(1))
    assert gp(x, versor_inverse(x)) == 1
    with pytest.raises(ValueError):
        versor_inverse(Multivector.scalar(3, 1) + Multivector.blade(3, 0b111))


def test_grade_projection_and_norm():
    x = Multivector(2, (F(1), F(2), F(3), F(4)))
    assert grade(x, 1) == Multivector.vector(2, (2, 3))
    assert norm2(x) == 30
    assert x.grades() == {0, 1, 2}
    assert x.parity() is None
    assert e(1).parity() == 1 and gp(e(1), e(2)).parity() == 0


def test_lift_is_zero_padding():
    v = Multivector.vector(2, (1, 2))
    w = lift(v, 3)
    assert w.dim == 3 and w.vector_components() == [1, 2, 0]
    assert gp(lift(e(1, 2), 3), lift(e(2, 2), 3)) == lift(gp(e(1, 2), e(2, 2)), 3)
    with pytest.raises(ValueError):
        lift(w, 2)


def test_dimension_checks():
    with pytest.raises(ValueError):
        gp(e(1, 2), e(1, 3))
    with pytest.raises(ValueError):
        Multivector(MAX_DIM + 1, [0] * (1 << (MAX_DIM + 1)))
    with pytest.raises(ValueError):
        Multivector(2, [0, 0, 0])
    with pytest.raises(ValueError):
        Multivector.basis(2, 3)


def test_format_and_parse():
    x = Multivector.scalar(3, 2) - e(2) / 3 + 3 * gp(e(1), e(3))
    text = format_multivector(x)
    assert text == "2 + -1/3*e2 + 3*e1e3"
    assert parse_multivector(text, 3) == x
    assert format_multivector(Multivector.zero(2)) == "0"
    assert parse_multivector("0", 2) == Multivector.zero(2)
    assert blade_name(0b101) == "e1e3"


@pytest.mark.parametrize("bad", ["1*e2e1", "1*x1", "2*e1e1", "1*e4"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_multivector(bad, 3)


def test_float_coefficients():
    x = e(1).to_float() * 0.5
    assert gp(x, x) == -0.25
    assert format_multivector(x) == "0.5*e1"


def test_scalar_arithmetic():
    x = e(1) + 1
    assert x - 1 == e(1)
    assert 1 - x == -e(1)
    assert 2 * x == x + x
