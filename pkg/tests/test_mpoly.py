from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeq.errors import INFINITE, PolyError, SingularMatrixError
from zeq.mpoly import MPoly, arith, matrix_inverse, mul_trunc, substitute_linear

XYZ = ("x", "y", "z")


def xyz():
    return (MPoly.var(XYZ, "x"), MPoly.var(XYZ, "y"), MPoly.var(XYZ, "z"))


def test_arith_examples():
    x, y, z = xyz()
    assert arith(x + y, x - y, "add") == 2 * x
    assert arith(z * z - x * y, MPoly.const(XYZ, 1), "mul") == z * z - x * y
    assert arith(y + x, y - x, "mul") == y * y - x * x


def test_derivative_examples():
    x, y, z = xyz()
    f = z * z - x * y
    assert f.derivative("z") == 2 * z
    assert f.derivative("y") == -x
    assert (x ** 3).derivative("z").is_zero()
    with pytest.raises(PolyError):
        f.derivative("w")


def test_substitute_linear_examples():
    x, y, z = xyz()
    f = z * z - x * y
    shear = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]  # x -> X + Y
    assert substitute_linear(f, shear, XYZ) == z * z - x * y - y * y
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert substitute_linear(f, ident, XYZ) == f
    # z has no x, so feeding z into x leaves it alone
    m = [[1, 0, 1], [0, 1, 0], [0, 0, 1]]
    assert substitute_linear(z, m, XYZ) == z
    with pytest.raises(SingularMatrixError):
        substitute_linear(f, [[1, 0, 0], [1, 0, 0], [0, 0, 1]], XYZ)


def test_order_queries():
    x, y, z = xyz()
    assert (z * z - x * y).order_at_origin() == 2
    assert MPoly.const(XYZ, 7).order_at_origin() == 0
    assert MPoly.zero(XYZ).order_at_origin() is INFINITE
    assert (z * z - x * y).order_in_var("z") == 2
    assert (4 * x * y).order_in_var("y") is INFINITE
    # 4y(x+ay) restricted to the y-axis is 4a y^2
    a = Fraction(3, 7)
    assert (4 * y * (x + a * y)).order_in_var("y") == 2


def test_lowest_form_examples():
    x, y, z = xyz()
    assert (z * z - x ** 3).lowest_form() == z * z
    assert (z * z - x * y).lowest_form() == z * z - x * y
    assert (x + x * x).lowest_form() == x
    with pytest.raises(PolyError):
        MPoly.zero(XYZ).lowest_form()


def test_exact_division():
    x, y, z = xyz()
    p = (x + y) * (x - y) * (z + 2)
    assert p.exact_div(x + y) == (x - y) * (z + 2)
    with pytest.raises(PolyError):
        (x + y).exact_div(z)


def test_univariate_round_trip():
    x, y, z = xyz()
    f = z ** 3 + (x + y) * z - x ** 2
    coeffs = f.as_univariate("z")
    assert len(coeffs) == 4
    back = MPoly.from_univariate(coeffs, "z")
    assert back == f.extend(back.vars)


def test_matrix_inverse_round_trip():
    m = [[1, Fraction(1, 2), 0], [0, 1, 0], [Fraction(1, 3), 0, 1]]
    inv = matrix_inverse(m)
    x, y, z = xyz()
    f = z * z - x * y + x ** 3
    once = substitute_linear(f, m, XYZ)
    again = substitute_linear(once, inv, XYZ)
    assert again == f


small_coeff = st.integers(-4, 4).map(Fraction)


@st.composite
def small_polys(draw):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        expo = tuple(draw(st.integers(0, 2)) for _ in range(3))
        terms[expo] = terms.get(expo, 0) + draw(small_coeff)
    return MPoly(XYZ, terms)


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys())
def test_order_multiplicative(p, q):
    if p.is_zero() or q.is_zero():
        return
    assert (p * q).order_at_origin() == p.order_at_origin() + q.order_at_origin()
    assert (p * q).lowest_form() == p.lowest_form() * q.lowest_form()


@settings(max_examples=25, deadline=None)
@given(small_polys())
def test_substitution_inverse_identity(p):
    m = [[1, 1, 0], [Fraction(1, 2), 1, 1], [0, 0, 1]]
    inv = matrix_inverse(m)
    assert substitute_linear(substitute_linear(p, m, XYZ), inv, XYZ) == p


@settings(max_examples=30, deadline=None)
@given(small_polys(), small_polys(), st.integers(1, 6))
def test_mul_trunc_agrees(p, q, bound):
    assert mul_trunc(p, q, bound) == (p * q).truncate_total(bound)
