"""Isolated-singularity cross-checks.

Plane-curve Milnor numbers are computed as the order in x of the
resultant of the two partials, minimized over seeded linear coordinate
changes (non-generic coordinates can only overestimate the intersection
multiplicity).  On top of that sit three classical consistency checks
for an isolated surface germ:

* mult of the discriminant curve  =  mu2 + mu1,
* mult of the second discriminant =  mu(D) + mult(D) - 1,
* the full multiplicity sequence in terms of (mu*, double points, cusps),

where mu1 = mult - 1 and mu2 is the Milnor number of a generic plane
section.  The Milnor number of the surface itself and the counts of
vanishing double points and cusps are literature-supplied inputs, never
computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curvefam import germ_discriminant_poly
from .disc import resultant
from .errors import PolyError
from .mpoly import MPoly
from .polygcd import gcd, squarefree_part
from .series import TruncSeries
from .weier import PrecisionBudget, NeedsMorePrecision, weierstrass, with_adequate_precision
from .disc import discriminant_series
from .equising import SurfaceGerm, multiplicity_sequence, _rng

CURVE_VARS = ("x", "y")


@dataclass(frozen=True)
class PlaneCurveGerm:
    """Reduced plane curve germ g(x, y) = 0 through the origin."""

    g: MPoly

    @classmethod
    def make(cls, g: MPoly, reduce: bool = True) -> "PlaneCurveGerm":
        if g.is_zero():
            raise PolyError("zero polynomial")
        extra = [v for v in g.vars if v not in CURVE_VARS]
        if extra:
            raise PolyError(f"plane curve germs use variables (x, y); got {extra}")
        g = g.extend(CURVE_VARS)
        if g.constant_term() != 0:
            raise PolyError("curve does not pass through the origin")
        if reduce:
            g = squarefree_part(g)
        return cls(g)


@dataclass(frozen=True)
class LiteratureData:
    """Supplied invariants: surface Milnor number and the counts of
    vanishing double points and cusps of a generic projection."""

    mu3: int
    k: int
    phi: int
    source: str = ""

    def __post_init__(self):
        if min(self.mu3, self.k, self.phi) < 0:
            raise PolyError("literature invariants must be nonnegative")


def _plane_changes(seed: int, trials: int):
    rng = _rng(seed, "curve")
    yield [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    produced = 1
    while produced < trials:
        a = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        b = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        rows = [[Fraction(1), a], [b, Fraction(1)]]
        if rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0] == 0:
            continue
        yield rows
        produced += 1


def _apply_plane(g: MPoly, rows) -> MPoly:
    xv = MPoly.var(CURVE_VARS, "x")
    yv = MPoly.var(CURVE_VARS, "y")
    return g.compose({
        "x": xv * rows[0][0] + yv * rows[0][1],
        "y": xv * rows[1][0] + yv * rows[1][1],
    })


def milnor_plane_curve(c: PlaneCurveGerm, seed: int = 1, trials: int = 3) -> int:
    """Milnor number of an isolated plane curve germ.

    The order in x of Res_y(g_x, g_y) can only overestimate the local
    intersection multiplicity of the partials; the minimum over seeded
    generic changes stabilizes at mu.
    """
    g = c.g
    gx = g.derivative("x")
    gy = g.derivative("y")
    if gx.constant_term() != 0 or gy.constant_term() != 0:
        return 0
    if gx.is_zero() and gy.is_zero():
        raise PolyError("constant germ")
    common = gcd(gx, gy)
    if not common.is_constant() and common.constant_term() == 0:
        raise PolyError("non-isolated singularity: partials share a factor through 0")
    best: Optional[int] = None
    for rows in _plane_changes(seed, trials):
        moved = _apply_plane(g, rows)
        mx = moved.derivative("x")
        my = moved.derivative("y")
        if mx.is_zero() or my.is_zero():
            continue
        if moved.degree_in("y") < 1 or mx.degree_in("y") + my.degree_in("y") == 0:
            continue
        try:
            r = resultant(mx, my, "y")
        except PolyError:
            continue
        o = r.order_at_origin()
        if isinstance(o, int) and (best is None or o < best):
            best = o
    if best is None:
        raise PolyError("no admissible coordinates for the Milnor resultant")
    return best


def _plane_section(f: MPoly, seed: int, trial: int) -> MPoly:
    """Restrict a surface germ to a seeded plane through the origin."""
    rng = _rng(seed, f"section{trial}")
    while True:
        r1 = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        r2 = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        r3 = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if r2 != 0 or r3 != 0:
            break
    xv = MPoly.var(CURVE_VARS, "x")
    yv = MPoly.var(CURVE_VARS, "y")
    # plane spanned by (1, r1, r2) and (0, 1, r3)
    return f.compose({
        "x": xv,
        "y": xv * r1 + yv,
        "z": xv * r2 + yv * r3,
    })


def mu2_mu1(g: SurfaceGerm, seed: int = 1, trials: int = 3) -> tuple[int, int]:
    """Milnor numbers of a generic plane section and a generic line section.

    mu1 is mult - 1; mu2 is stabilized as the minimum of the section
    Milnor numbers over seeded planes.
    """
    if g.params:
        raise PolyError("specialize the family first")
    f = squarefree_part(g.f)
    m = f.order_at_origin()
    if not isinstance(m, int):
        raise PolyError("zero germ")
    mu1 = m - 1
    if m == 1:
        return 0, 0
    best: Optional[int] = None
    for trial in range(trials):
        section = _plane_section(f, seed, trial)
        if section.is_zero():
            continue
        section = squarefree_part(section)
        try:
            mu = milnor_plane_curve(PlaneCurveGerm.make(section, reduce=False),
                                    seed=seed + trial, trials=2)
        except PolyError:
            continue
        if best is None or mu < best:
            best = mu
    if best is None:
        raise PolyError("no admissible plane section found")
    return best, mu1


def check_formula_a(g: SurfaceGerm, seed: int = 1) -> bool:
    """mult of the discriminant curve equals mu2 + mu1 (both sides computed
    independently: the left by the discriminant pipeline, the right by
    plane-section resultants)."""
    seq, _ = multiplicity_sequence(g, seed=seed)
    mu2, mu1 = mu2_mu1(g, seed=seed)
    return seq.m_delta == mu2 + mu1


def curve_discriminant_order(c: PlaneCurveGerm, seed: int = 1, trials: int = 8) -> int:
    """Order of the discriminant of the prepared curve germ, in seeded
    coordinates where the y-axis is transverse to the curve."""
    g = c.g
    m = g.order_at_origin()
    if not isinstance(m, int):
        raise PolyError("zero germ")
    for rows in _plane_changes(seed, trials):
        moved = _apply_plane(g, rows)
        o = moved.order_in_var("y")
        if not isinstance(o, int) or o != m:
            continue
        if m == 1:
            return 0
        gd = germ_discriminant_poly(moved, "y")
        if gd.unit_discriminant:
            return 0
        if gd.clean:
            o2 = gd.poly.order_at_origin()
            if isinstance(o2, int):
                return o2
            raise PolyError("discriminant vanished for a reduced curve")
        budget = PrecisionBudget.for_poly(moved, "y")

        def task(n: int):
            wd = weierstrass(moved, "y", n)
            coeffs = [TruncSeries(cc, n) for cc in wd.w.coefficient_list()]
            ds = discriminant_series(coeffs)
            oo = ds.order_at_origin()
            if not isinstance(oo, int):
                raise NeedsMorePrecision("curve discriminant order")
            return oo

        o2, _ = with_adequate_precision(task, budget)
        return o2
    raise PolyError("no transverse coordinates found for the curve")


def check_formula_43(c: PlaneCurveGerm, seed: int = 1) -> bool:
    """Order of the curve discriminant equals mu + mult - 1."""
    lhs = curve_discriminant_order(c, seed=seed)
    mu = milnor_plane_curve(c, seed=seed)
    m = c.g.order_at_origin()
    return lhs == mu + m - 1


def prop44_check(g: SurfaceGerm, lit: LiteratureData, seed: int = 1) -> tuple[bool, tuple, tuple]:
    """Multiplicity sequence against the isolated-singularity formula.

    Expected: (mu1 + 1, mu2 + mu1, 1, mu3 + mu2 + 2k + 3phi).  Returns
    (match, computed, expected).
    """
    seq, _ = multiplicity_sequence(g, seed=seed)
    computed = seq.as_tuple()
    if seq.smooth_discriminant:
        mu2, mu1 = 0, 0
    else:
        mu2, mu1 = mu2_mu1(g, seed=seed)
    expected = (mu1 + 1, mu2 + mu1, 1, lit.mu3 + mu2 + 2 * lit.k + 3 * lit.phi)
    if seq.smooth_discriminant:
        expected = (mu1 + 1, 0, 1, 0)
    return computed == expected, computed, expected
