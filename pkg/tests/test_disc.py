import random
from fractions import Fraction

import pytest

from zeq.disc import (
    discriminant,
    discriminant_series,
    generalized_discriminants,
    idiscr,
    lemma_a1_constant,
    poly_from_roots,
    resultant,
    root_formula_oracle,
)
from zeq.errors import PolyError
from zeq.mpoly import MPoly
from zeq.series import TruncSeries

XYZ = ("x", "y", "z")


def xyz():
    return (MPoly.var(XYZ, "x"), MPoly.var(XYZ, "y"), MPoly.var(XYZ, "z"))


def test_resultant_examples():
    x, y, z = xyz()
    assert resultant(z * z - x, 2 * z, "z") == -4 * x
    a = MPoly.var(("y", "a", "b"), "a")
    b = MPoly.var(("y", "a", "b"), "b")
    yv = MPoly.var(("y", "a", "b"), "y")
    assert resultant(yv - a, yv - b, "y") == a - b
    assert resultant(z * z, 2 * z, "z").is_zero()
    with pytest.raises(PolyError):
        resultant(MPoly.zero(XYZ), z, "z")


def test_discriminant_examples():
    x, y, z = xyz()
    assert discriminant(z * z - x * y, "z") == 4 * x * y
    xy = ("x", "y")
    g = MPoly.var(xy, "y") ** 2 - MPoly.var(xy, "x") ** 3
    assert discriminant(g, "y") == 4 * MPoly.var(xy, "x") ** 3
    assert discriminant(z - x, "z") == MPoly.const(("x", "y"), 1)


def test_prs_engine_matches_bareiss():
    x, y, z = xyz()
    p = z ** 4 + x * z ** 3 - y * z + x * y
    q = p.derivative("z") * (z - y) + x
    assert resultant(p, q, "z", engine="bareiss") == resultant(p, q, "z", engine="prs")


def test_root_formula_examples():
    assert root_formula_oracle([Fraction(0), Fraction(0)]) == [Fraction(0), Fraction(2)]
    assert root_formula_oracle([Fraction(0), Fraction(1)]) == [Fraction(1), Fraction(2)]
    assert root_formula_oracle([Fraction(0)] * 3) == [Fraction(0), Fraction(0), Fraction(3)]


def test_chain_examples():
    roots = [Fraction(1), Fraction(2), Fraction(3)]
    w = poly_from_roots(roots, ("y",), "y")
    chain = generalized_discriminants(w, "y")
    assert [e.constant_term() for e in chain.entries] == [Fraction(4), Fraction(6), Fraction(3)]
    assert idiscr(chain) == 1

    w = poly_from_roots([Fraction(0)] * 3, ("y",), "y")
    chain = generalized_discriminants(w, "y")
    assert [e.constant_term() for e in chain.entries] == [0, 0, 3]
    assert idiscr(chain) == 3

    w = poly_from_roots([Fraction(0), Fraction(0), Fraction(1)], ("y",), "y")
    chain = generalized_discriminants(w, "y")
    assert [e.constant_term() for e in chain.entries] == [0, 2, 3]
    assert idiscr(chain) == 2


def test_chain_terminal_entry_is_degree():
    rng = random.Random(11)
    for _ in range(20):
        d = rng.randint(1, 6)
        roots = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d)]
        w = poly_from_roots(roots, ("y",), "y")
        chain = generalized_discriminants(w, "y")
        assert chain.entries[-1].constant_term() == d
        assert [e.constant_term() for e in chain.entries] == root_formula_oracle(roots)


def test_chain_multivariate_entries():
    xy = ("x", "y")
    x = MPoly.var(xy, "x")
    y = MPoly.var(xy, "y")
    w = y ** 3 + x * y ** 2  # y^2 (y + x): roots 0, 0, -x
    chain = generalized_discriminants(w, "y")
    assert idiscr(chain) == 2
    assert chain.entry(2) == 2 * x * x


def test_series_chain_matches_polynomial_chain():
    xy = ("x", "y")
    x = MPoly.var(xy, "x")
    y = MPoly.var(xy, "y")
    w = y ** 3 + x * y ** 2 - x ** 3 * y
    from zeq.weier import weierstrass

    wd = weierstrass(w, "y", 9)
    chain_series = generalized_discriminants(wd.w)
    chain_poly = generalized_discriminants(w, "y")
    assert chain_series.first_nonzero == chain_poly.first_nonzero
    for es, ep in zip(chain_series.entries, chain_poly.entries):
        assert es.body == ep.truncate_total(es.precision).extend(es.body.vars)


def test_lemma_a1_examples():
    assert lemma_a1_constant([(Fraction(0), 2)]) == 2
    assert lemma_a1_constant([(Fraction(0), 2), (Fraction(1), 1)]) == 2
    assert lemma_a1_constant([(Fraction(0), 1), (Fraction(1), 1), (Fraction(3), 1)]) == 1


def test_disc_multiplicativity_random():
    rng = random.Random(3)
    for _ in range(15):
        dp = rng.randint(1, 4)
        dq = rng.randint(1, 4)
        roots_p = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(dp)]
        roots_q = [Fraction(rng.randint(7, 15), rng.randint(1, 3)) for _ in range(dq)]
        p = poly_from_roots(roots_p, ("y",), "y")
        q = poly_from_roots(roots_q, ("y",), "y")
        lhs = discriminant(p * q, "y") if dp + dq >= 2 else None
        disc_p = discriminant(p, "y") if dp >= 1 else None
        disc_q = discriminant(q, "y")
        res = resultant(p, q, "y")
        assert lhs == disc_p * disc_q * res * res


def test_discriminant_series_quadratic():
    xy = ("x", "y")
    x = MPoly.var(xy, "x")
    # y^2 + x*y: discriminant x^2
    coeffs = [TruncSeries(MPoly.zero(xy), 8),
              TruncSeries(x, 8),
              TruncSeries(MPoly.const(xy, 1), 8)]
    d = discriminant_series(coeffs)
    assert d.body == x * x
