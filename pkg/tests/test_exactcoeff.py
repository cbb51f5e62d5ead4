from __future__ import annotations

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from invdiff.exactcoeff import (
    GaussRational,
    I,
    Rational,
    as_coeff,
    conj,
    field_arith,
    format_coeff,
    gauss,
    im_part,
    parse_coeff,
    re_part,
)
from oracles import F, Gauss

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f.numerator) < 10**6)
values = st.tuples(rationals, rationals).map(lambda p: gauss(mpq(p[0].numerator, p[0].denominator),
                                                            mpq(p[1].numerator, p[1].denominator)))


def to_oracle(x) -> Gauss:
    return Gauss(F(re_part(x)), F(im_part(x)))


def test_rational_addition():
    assert field_arith(gauss(mpq(1, 2)), gauss(mpq(1, 3)), "add") == mpq(5, 6)


def test_i_squared():
    assert field_arith(I, I, "mul") == -1
    assert isinstance(I * I, Rational)


def test_coefficient_product_by_hand():
    assert field_arith(mpq(3, 8), -2, "mul") == mpq(-3, 4)


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        field_arith(1, 0, "div")
    with pytest.raises(ZeroDivisionError):
        field_arith(I, gauss(0, 0), "div")


def test_unknown_operation():
    with pytest.raises(ValueError):
        field_arith(1, 2, "pow")


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_coeff(0.5)
    with pytest.raises(TypeError):
        as_coeff(1j)


def test_text_form():
    assert format_coeff(gauss(mpq(1, 2), mpq(-3, 4))) == "1/2-3/4*i"
    assert format_coeff(mpq(-7, 3)) == "-7/3"
    assert parse_coeff("1/2+3/4*i") == gauss(mpq(1, 2), mpq(3, 4))
    assert parse_coeff("-2*i") == gauss(0, -2)
    with pytest.raises(ValueError):
        parse_coeff("0.5")


@given(values, values)
def test_matches_fraction_oracle(a, b):
    oa, ob = to_oracle(a), to_oracle(b)
    for op, fn in (("add", lambda x, y: x + y), ("sub", lambda x, y: x - y), ("mul", lambda x, y: x * y)):
        assert to_oracle(field_arith(a, b, op)) == fn(oa, ob)
    if b != 0:
        assert to_oracle(field_arith(a, b, "div")) == oa / ob


@given(values, values, values)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(values, values)
def test_conjugation_is_multiplicative(a, b):
    assert conj(a * b) == conj(a) * conj(b)
    assert conj(conj(a)) == a


@given(values)
def test_canonical_representation(a):
    # a value with zero imaginary part is always a plain rational
    b = a + conj(a)
    assert isinstance(b, Rational)
    assert (type(a) is GaussRational) == (im_part(a) != 0)
    assert parse_coeff(format_coeff(a)) == a
    assert format_coeff(parse_coeff(format_coeff(a))) == format_coeff(a)
    assert hash(a * 1) == hash(a)
