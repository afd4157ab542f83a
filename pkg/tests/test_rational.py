from fractions import Fraction

import pytest

from hermsub.rational import CRat, I, ONE, ZERO, format_crat, parse_crat


def test_basic_arithmetic():
    a = CRat(Fraction(1, 2), Fraction(1, 3))
    b = CRat(Fraction(2), Fraction(-1, 3))
    assert a + b == CRat(Fraction(5, 2), 0)
    assert a - a == ZERO
    assert (a * b).re == Fraction(1) + Fraction(1, 9)
    assert I * I == CRat(-1)
    assert (I**3) == CRat(0, -1)
    assert (a / a) == ONE


def test_division_exact():
    a = CRat(3, 4)
    b = CRat(0, 2)
    q = a / b
    assert q * b == a
    with pytest.raises(ZeroDivisionError):
        a / ZERO


def test_power_negative():
    x = CRat(Fraction(2), Fraction(1))
    assert x**-2 == (ONE / x) ** 2


def test_formatting_round_trip():
    cases = [
        CRat(Fraction(1, 4)),
        CRat(Fraction(-3, 7), Fraction(2, 5)),
        CRat(0, Fraction(-1)),
        CRat(5),
        ZERO,
    ]
    for x in cases:
        assert parse_crat(format_crat(x)) == x


def test_parse_variants():
    assert parse_crat("1/2") == CRat(Fraction(1, 2))
    assert parse_crat("-3") == CRat(-3)
    assert parse_crat("1/2+1/3 i") == CRat(Fraction(1, 2), Fraction(1, 3))
    assert parse_crat("1/2-1/3 i") == CRat(Fraction(1, 2), Fraction(-1, 3))
    with pytest.raises(ValueError):
        parse_crat("pi")


def test_abs_real_is_exact():
    assert abs(CRat(Fraction(-3, 4))) == 0.75
    assert abs(CRat(0, 1)) == 1.0


def test_immutability():
    x = CRat(1)
    with pytest.raises(AttributeError):
        x.re = Fraction(2)
