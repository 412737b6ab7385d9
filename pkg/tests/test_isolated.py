import random

import pytest

from zeq.errors import PolyError
from zeq.mpoly import MPoly
from zeq.equising import SurfaceGerm
from zeq.isolated import (
    LiteratureData,
    PlaneCurveGerm,
    check_formula_43,
    check_formula_a,
    curve_discriminant_order,
    milnor_plane_curve,
    mu2_mu1,
    prop44_check,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def curve(expr_builder):
    return PlaneCurveGerm.make(expr_builder)


def test_milnor_examples():
    x = MPoly.var(XY, "x")
    y = MPoly.var(XY, "y")
    assert milnor_plane_curve(curve(y * y - x ** 3)) == 2
    assert milnor_plane_curve(curve(x * x - y * y)) == 1
    assert milnor_plane_curve(curve(y - x * x)) == 0


def test_milnor_non_isolated_rejected():
    x = MPoly.var(XY, "x")
    y = MPoly.var(XY, "y")
    with pytest.raises(PolyError):
        milnor_plane_curve(PlaneCurveGerm(x * x * y))  # bypass reduction on purpose


def test_milnor_seed_invariance():
    x = MPoly.var(XY, "x")
    y = MPoly.var(XY, "y")
    c = curve(y ** 3 - x ** 4)
    assert milnor_plane_curve(c, seed=1) == milnor_plane_curve(c, seed=9) == 6


def test_mu2_mu1():
    x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
    assert mu2_mu1(SurfaceGerm.make(x * x + y * y + z * z)) == (1, 1)
    assert mu2_mu1(SurfaceGerm.make(z)) == (0, 0)
    # rank-1 quadratic part: the generic plane section is cuspidal
    assert mu2_mu1(SurfaceGerm.make(z * z + x ** 3 + y ** 3)) == (2, 1)
    # independent oracle for the A2 section: the quadratic part x^2+y^2 has
    # rank 2, so a generic plane section is Morse
    a2 = SurfaceGerm.make(x * x + y * y + z ** 3)
    assert mu2_mu1(a2) == (1, 1)


def test_formula_multiplicity_of_discriminant():
    x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
    for f in (x * x + y * y + z * z,
              x * x + y * y + z ** 3,
              z * z + x ** 3 + y ** 3,
              z):
        assert check_formula_a(SurfaceGerm.make(f), seed=1)


def test_formula_second_discriminant_examples():
    x = MPoly.var(XY, "x")
    y = MPoly.var(XY, "y")
    assert curve_discriminant_order(curve(y * y - x ** 3)) == 3
    assert check_formula_43(curve(y * y - x ** 3))
    assert check_formula_43(curve(x * x - y * y))
    assert check_formula_43(curve(y - x * x))


def test_formula_checks_random_isolated():
    rng = random.Random(21)
    x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
    cx = MPoly.var(XY, "x")
    cy = MPoly.var(XY, "y")
    done = 0
    while done < 3:
        roots = rng.sample([-3, -2, -1, 1, 2, 3], rng.randint(2, 3))
        form = MPoly.const(XYZ, 1)
        cform = MPoly.const(XY, 1)
        for r in roots:
            form = form * (y - r * x)
            cform = cform * (cy - r * cx)
        assert check_formula_a(SurfaceGerm.make(z * z + form), seed=1 + done)
        assert check_formula_43(PlaneCurveGerm.make(cform), seed=1 + done)
        done += 1


def test_prop44_a1():
    x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
    ok, computed, expected = prop44_check(
        SurfaceGerm.make(x * x + y * y + z * z), LiteratureData(1, 0, 0, "test"))
    assert ok and computed == (2, 2, 1, 2) and expected == (2, 2, 1, 2)


def test_prop44_mismatch_reports_tuples():
    x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
    ok, computed, expected = prop44_check(
        SurfaceGerm.make(x * x + y * y + z * z), LiteratureData(5, 0, 0, "wrong"))
    assert not ok
    assert computed == (2, 2, 1, 2)
    assert expected[3] == 5 + 1 + 0 + 0


def test_prop44_smooth_convention():
    x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
    ok, computed, expected = prop44_check(SurfaceGerm.make(z), LiteratureData(0, 0, 0, "smooth"))
    assert ok and computed == (1, 0, 1, 0) and expected == (1, 0, 1, 0)


def test_isolated_corpus_i0_is_one():
    x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
    from zeq.equising import multiplicity_sequence
    for f in (x * x + y * y + z * z, x * x + y * y + z ** 3,
              z * z + x ** 3 + y ** 3, z * z + x ** 3 + y ** 4):
        seq, _ = multiplicity_sequence(SurfaceGerm.make(f), seed=1)
        assert seq.i0 == 1
