import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeq.curvefam import (
    decide_curve_family,
    equimultiple_along_params,
    fiber_germ_excess,
    germ_discriminant_poly,
    section_order,
)
from zeq.errors import INFINITE, PolyError
from zeq.mpoly import MPoly

XYT = ("x", "y", "t")
XYZT = ("x", "y", "z", "t")


def test_equimultiple_examples():
    x = MPoly.var(XYT, "x")
    y = MPoly.var(XYT, "y")
    t = MPoly.var(XYT, "t")

    g, s, eq = equimultiple_along_params(x * x + t * x, ["x", "y"], ["t"])
    assert (g, s, eq) == (1, 2, False)

    g, s, eq = equimultiple_along_params((1 + t) * x * x, ["x", "y"], ["t"])
    assert (g, s, eq) == (2, 2, True)

    g, s, eq = equimultiple_along_params(x ** 3 + t * t * x * y * y, ["x", "y"], ["t"])
    assert (g, s, eq) == (3, 3, True)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)),
                min_size=1, max_size=5))
def test_equimultiple_invariant(term_shapes):
    terms = {}
    for i, j, k in term_shapes:
        terms[(i, j, k)] = terms.get((i, j, k), 0) + Fraction(1)
    p = MPoly(XYT, terms)
    if p.is_zero():
        return
    g, s, eq = equimultiple_along_params(p, ["x", "y"], ["t"])
    if isinstance(s, int):
        assert s >= g
        assert eq == (s == g)
    else:
        assert not eq


def test_germ_discriminant_clean_cases():
    x = MPoly.var(("x", "y", "z"), "x")
    y = MPoly.var(("x", "y", "z"), "y")
    z = MPoly.var(("x", "y", "z"), "z")
    gd = germ_discriminant_poly(z * z - x * y, "z")
    assert gd.clean and not gd.unit_discriminant
    # no far roots: representative is the discriminant up to a constant
    assert gd.poly.monic_deglex() == (x * y).monic_deglex()

    gd = germ_discriminant_poly(z - x * y, "z")
    assert gd.unit_discriminant

    # far root at z = -1 stays simple: still clean
    f = (z + 1) * (z * z - x * y)
    gd = germ_discriminant_poly(f, "z")
    assert gd.clean
    assert gd.degree == 2


def test_germ_discriminant_rejects_non_reduced():
    z = MPoly.var(("x", "y", "z"), "z")
    x = MPoly.var(("x", "y", "z"), "x")
    with pytest.raises(PolyError):
        germ_discriminant_poly((z - x) ** 2, "z")


def test_fiber_germ_excess():
    xy = ("x", "y")
    x = MPoly.var(xy, "x")
    y = MPoly.var(xy, "y")
    rng = random.Random(1)
    e, eps = fiber_germ_excess((y * y - x ** 3) * (y - x) , "y", "x", rng)
    assert (e, eps) == (3, 0)
    e, eps = fiber_germ_excess((y - x) ** 2 * (y + x), "y", "x", rng)
    assert (e, eps) == (3, 1)


def test_decide_curve_family_trivial_yes():
    x = MPoly.var(XYT, "x")
    y = MPoly.var(XYT, "y")
    p = 4 * (x + Fraction(1, 2) * y) * y  # t-independent double-point discriminant
    rep = decide_curve_family(p, "y", "x", ["t"], clean=True)
    assert rep.decision == "yes"
    assert rep.i0 == 1


def test_decide_curve_family_smoothing_no():
    x = MPoly.var(XYT, "x")
    y = MPoly.var(XYT, "y")
    t = MPoly.var(XYT, "t")
    # reduced discriminant gains a unit term at generic t
    p = 4 * (x + 2 * y) * (y + t)
    rep = decide_curve_family(p, "y", "x", ["t"], clean=True)
    assert rep.decision == "no"


def test_decide_curve_family_special_vanishes():
    x = MPoly.var(XYT, "x")
    y = MPoly.var(XYT, "y")
    t = MPoly.var(XYT, "t")
    p = t * (y * y - x ** 3)
    rep = decide_curve_family(p, "y", "x", ["t"], clean=True)
    assert rep.decision == "no"
    assert rep.special_vanishes


def test_section_order():
    x = MPoly.var(XYT, "x")
    y = MPoly.var(XYT, "y")
    assert section_order(4 * x * y + y ** 3, "y") == 3
    assert section_order(4 * x * y, "y") is INFINITE
