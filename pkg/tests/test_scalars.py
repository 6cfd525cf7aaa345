from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from damgshap.errors import MixedScalarError
from damgshap.scalars import Vector, format_scalar, format_value, normalize, parse_rational, value_kind

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=12)
vectors = st.lists(rationals, min_size=3, max_size=3).map(Vector)


def test_parse_rational_forms():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    assert parse_rational(7) == 7
    for bad in ("1/0", "0.5", "a/b", "", "1//2"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_format_roundtrip():
    assert format_scalar(Fraction(-7, 3)) == "-7/3"
    assert format_scalar(Fraction(4, 2)) == "2"
    assert format_scalar(Fraction(1, 3), as_float=True) == "0.333333333333"
    assert format_value(Vector([1, Fraction(1, 2)])) == ["1", "1/2"]
    assert parse_rational(format_scalar(Fraction(-22, 7))) == Fraction(-22, 7)


def test_normalize_collapses_integral_fractions():
    assert type(normalize(Fraction(6, 3))) is int
    assert normalize(Fraction(1, 3)) == Fraction(1, 3)


def test_mixed_vector_rejected():
    with pytest.raises(MixedScalarError):
        value_kind(Vector([1, 0.5]))


@given(vectors, vectors, vectors)
def test_vector_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + Vector([0, 0, 0]) == a
    assert 0 + a == a
    assert a + (-a) == Vector([0, 0, 0])
    assert sum([a, b, c]) == a + b + c


@given(vectors, vectors, rationals, rationals)
def test_vector_scaling(a, b, r, s):
    assert r * (a + b) == r * a + r * b
    assert (r + s) * a == r * a + s * a
    assert a * r == r * a
