import pytest

from zeq.errors import NotRegularError, PrecisionExhaustedError
from zeq.mpoly import MPoly
from zeq.series import TruncSeries
from zeq.weier import (
    NeedsMorePrecision,
    PrecisionBudget,
    regularity,
    weierstrass,
    with_adequate_precision,
)

XYZ = ("x", "y", "z")
BS_VARS = ("x", "y", "z", "t")


def xyz():
    return (MPoly.var(XYZ, "x"), MPoly.var(XYZ, "y"), MPoly.var(XYZ, "z"))


def residual_base_order(wd, f):
    """Smallest base degree at which unit*W differs from f."""
    w = wd.w.to_mpoly()
    u = wd.unit_poly()
    prod = u * w.extend(u.vars) if wd.w.degree else u
    diff = prod - f.extend(prod.vars)
    if diff.is_zero():
        return None
    vi = diff.vars.index(wd.var)
    return min(sum(e for j, e in enumerate(expo) if j != vi) for expo in diff.terms)


def test_regularity_examples():
    x, y, z = xyz()
    assert regularity(z * z - x * y, "z") == 2
    assert regularity(x * y, "z") is None
    bs = (MPoly.var(BS_VARS, "z") ** 5
          + MPoly.var(BS_VARS, "t") * MPoly.var(BS_VARS, "y") ** 6 * MPoly.var(BS_VARS, "z")
          + MPoly.var(BS_VARS, "x") * MPoly.var(BS_VARS, "y") ** 7
          + MPoly.var(BS_VARS, "x") ** 15)
    assert regularity(bs, "z") == 5


def test_weierstrass_fixed_point():
    x, y, z = xyz()
    f = z * z - x * y
    wd = weierstrass(f, "z", 8)
    assert wd.w.degree == 2
    assert wd.w.to_mpoly() == f.extend(wd.w.to_mpoly().vars)
    assert wd.unit_poly() == MPoly.const(wd.base_vars + ("z",), 1)
    assert residual_base_order(wd, f) is None


def test_weierstrass_unit_split():
    x, y, z = xyz()
    f = (1 + x) * (z - x)
    wd = weierstrass(f, "z", 8)
    assert wd.w.degree == 1
    assert wd.w.to_mpoly() == (z - x).extend(wd.w.to_mpoly().vars)
    assert wd.unit_poly() == (1 + x).extend(wd.unit_poly().vars)


def test_weierstrass_far_root():
    x, y, z = xyz()
    f = z * z + z
    wd = weierstrass(f, "z", 6)
    assert wd.w.degree == 1
    assert wd.w.to_mpoly() == z.extend(wd.w.to_mpoly().vars)
    assert wd.unit_poly() == (z + 1).extend(wd.unit_poly().vars)


def test_weierstrass_product_and_uniqueness():
    x, y, z = xyz()
    f = z ** 3 + (x + y) * z ** 2 + x * z + x * y ** 2 + x ** 2
    # f(0,0,z) = z^3: order 3, no far part
    for n in (4, 8):
        wd = weierstrass(f, "z", n)
        assert wd.w.degree == 3
        for a in wd.w.coeffs:
            assert a.constant_term() == 0
        r = residual_base_order(wd, f)
        assert r is None or r >= n
    lo = weierstrass(f, "z", 4)
    hi = weierstrass(f, "z", 8)
    for a, b in zip(lo.w.coeffs, hi.w.coeffs):
        assert a.body == b.body.truncate_total(4)


def test_weierstrass_with_far_factor_product():
    x, y, z = xyz()
    f = (1 + x + z) * (z ** 3 - x * z + y * y)
    wd = weierstrass(f, "z", 12)
    assert wd.w.degree == 3
    r = residual_base_order(wd, f)
    assert r is None or r >= 12


def test_not_regular_raises():
    x, y, z = xyz()
    with pytest.raises(NotRegularError):
        weierstrass(x * y, "z", 4)


def test_precision_controller_retries():
    x = MPoly.var(("x",), "x")
    calls = []

    def task(n):
        calls.append(n)
        s = TruncSeries(x ** 3, n)
        return s.order_at_origin()

    result, used = with_adequate_precision(task, PrecisionBudget(2, 16))
    assert result == 3 and used == 4
    assert calls == [2, 4]


def test_precision_controller_exhausts():
    x = MPoly.var(("x",), "x")

    def task(n):
        return TruncSeries(x ** 10, n).order_at_origin()

    with pytest.raises(PrecisionExhaustedError) as err:
        with_adequate_precision(task, PrecisionBudget(2, 8))
    assert err.value.precision == 8


def test_controller_accepts_raised_signal():
    def task(n):
        if n < 6:
            raise NeedsMorePrecision("thing")
        return n

    result, used = with_adequate_precision(task, PrecisionBudget(2, 8))
    assert result == 8 and used == 8
