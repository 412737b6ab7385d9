from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeq.errors import ParseError
from zeq.mpoly import MPoly
from zeq.parser import parse_poly, poly_to_string

XYZ = ("x", "y", "z")


def test_basic_expressions():
    x = MPoly.var(XYZ, "x")
    y = MPoly.var(XYZ, "y")
    z = MPoly.var(XYZ, "z")
    assert parse_poly("z^2 - x*y", XYZ) == z * z - x * y
    assert parse_poly("1/2*x^2", XYZ) == Fraction(1, 2) * x * x
    assert parse_poly("-x^2", XYZ) == -(x * x)
    assert parse_poly("(x+y)*(x-y)", XYZ) == x * x - y * y
    assert parse_poly("0", XYZ).is_zero()


def test_briancon_speder_parse():
    v = ("x", "y", "z", "t")
    x, y, z, t = (MPoly.var(v, n) for n in v)
    got = parse_poly("z^5 + t*y^6*z + x*y^7 + x^15", XYZ, params=("t",))
    assert got == z ** 5 + t * y ** 6 * z + x * y ** 7 + x ** 15


def test_errors_have_positions():
    with pytest.raises(ParseError) as err:
        parse_poly("x + w", XYZ)
    assert err.value.position == 4
    with pytest.raises(ParseError):
        parse_poly("x y", XYZ)  # implicit multiplication
    with pytest.raises(ParseError):
        parse_poly("x + ", XYZ)
    with pytest.raises(ParseError):
        parse_poly("x ^ y", XYZ)
    with pytest.raises(ParseError):
        parse_poly("x / y", XYZ)
    with pytest.raises(ParseError):
        parse_poly("", XYZ)
    with pytest.raises(ParseError):
        parse_poly("x + $", XYZ)


small_coeff = st.integers(-9, 9).map(Fraction).filter(lambda c: c != 0)


@st.composite
def printable_polys(draw):
    n_terms = draw(st.integers(0, 5))
    terms = {}
    for _ in range(n_terms):
        expo = tuple(draw(st.integers(0, 3)) for _ in range(3))
        terms[expo] = terms.get(expo, Fraction(0)) + draw(small_coeff)
    return MPoly(XYZ, terms)


@settings(max_examples=60, deadline=None)
@given(printable_polys())
def test_round_trip(p):
    assert parse_poly(poly_to_string(p), XYZ) == p


def test_round_trip_fractions():
    p = MPoly(XYZ, {(2, 0, 0): Fraction(-3, 7), (0, 1, 1): Fraction(5, 2), (0, 0, 0): Fraction(1, 6)})
    assert parse_poly(poly_to_string(p), XYZ) == p
