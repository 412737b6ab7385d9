"""Decision kernel for equisingularity of plane-curve families.

Everything here operates on a polynomial (or truncated-series)
representative of the discriminant germ of a surface projection.  The
kernel decides whether the family of curve germs it defines is
equisingular along the parameter directions: the first generalized
discriminant of the prepared family that is not identically zero must be
equimultiple along the parameter axis.

Decision routes, in order of preference:

* exact polynomial route - the germ invariants (Weierstrass degree,
  first-nonzero chain index via gcd excess, reduced discriminant) are
  read off exact polynomials; valid when the representative is germ-equal
  to the true discriminant up to a unit factor;
* infinite-jump certificate - when the special fiber's reduced structure
  degenerates (its Weierstrass factor acquires repeated roots) while the
  family stays reduced, the special chain entry vanishes identically and
  the family cannot be equimultiple: an exact "no";
* truncated-series route - honest fallback at controller-driven
  precision for small germs where no exact certificate applies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import INFINITE, NotRegularError, PolyError
from .mpoly import MPoly
from .polygcd import gcd, is_squarefree_univariate, modular_gcd_bivariate
from .series import TruncSeries
from .weier import (
    NeedsMorePrecision,
    PrecisionBudget,
    regularity,
    weierstrass,
    with_adequate_precision,
)
from .disc import discriminant_series, generalized_discriminants, resultant

# ----------------------------------------------------------------------
# germ discriminant representatives


@dataclass
class GermDisc:
    """Polynomial representative of the discriminant germ of a projection.

    ``clean`` means the representative equals the true germ up to a unit
    factor, so orders, sections and gcd structure can be read off
    exactly.  Otherwise only unit-insensitive certificates may be used.
    """

    poly: MPoly
    var_removed: str
    degree: int                   # Weierstrass degree of the prepared input
    clean: bool
    unit_discriminant: bool
    note: str = ""


def germ_discriminant_poly(f: MPoly, v: str) -> GermDisc:
    """Resultant-based representative of Disc of the Weierstrass factor of f.

    When deg_v(f) equals the regularity order there is no far-root factor
    and the representative is clean unconditionally.  When the far roots
    stay away from the origin and from infinity (no leading-coefficient
    drop) and are pairwise distinct at the origin, the far contamination
    is a unit and the representative is again clean.  Otherwise the
    polynomial is still a multiple of the discriminant germ by a series
    factor, which is enough for the squarefree certificates.
    """
    d = regularity(f, v)
    if d is None:
        raise NotRegularError(v)
    base = tuple(w for w in f.vars if w != v)
    if d == 0:
        raise PolyError("unit germ has no discriminant")
    if d == 1:
        return GermDisc(MPoly.const(base, 1), v, 1, True, True, "degree-1 convention")
    big_d = f.degree_in(v)
    p_raw = resultant(f, f.derivative(v), v)
    if p_raw.is_zero():
        raise PolyError("repeated factors in the distinguished variable; reduce first")
    if big_d == d:
        return GermDisc(p_raw, v, d, True, False, "no far roots")
    # far factor analysis at the origin fiber
    origin = {w: 0 for w in base}
    f0 = f.substitute_values(origin).as_univariate(v)
    u0 = [c.constant_term() for c in f0[d:]]
    no_drop = len(f0) - 1 == big_d and f0[-1].constant_term() != 0
    if no_drop and is_squarefree_univariate(u0):
        return GermDisc(p_raw, v, d, True, False, "far roots simple at origin")
    return GermDisc(p_raw, v, d, False, False, "far-root contamination")


def section_univariate(p: MPoly, v: str) -> list[Fraction]:
    """Coefficient list of p with every variable except v set to 0."""
    i = p._index(v)
    out = [Fraction(0)] * (p.degree_in(v) + 1)
    for expo, c in p.terms.items():
        if all(e == 0 for j, e in enumerate(expo) if j != i):
            out[expo[i]] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def section_order(p: MPoly, v: str):
    sec = section_univariate(p, v)
    for k, c in enumerate(sec):
        if c != 0:
            return k
    return INFINITE


# ----------------------------------------------------------------------
# order bookkeeping along parameters


def generic_order(p: MPoly, geom: Sequence[str], params: Sequence[str]):
    """Minimal geometric degree over all terms (any parameter part)."""
    if p.is_zero():
        return INFINITE
    idx = [p.vars.index(g) for g in geom if g in p.vars]
    return min(sum(e[i] for i in idx) for e in p.terms)


def special_order(p: MPoly, geom: Sequence[str], params: Sequence[str]):
    """Minimal geometric degree over parameter-free terms."""
    if p.is_zero():
        return INFINITE
    gi = [p.vars.index(g) for g in geom if g in p.vars]
    pi = [p.vars.index(t) for t in params if t in p.vars]
    best = None
    for e in p.terms:
        if all(e[i] == 0 for i in pi):
            deg = sum(e[i] for i in gi)
            if best is None or deg < best:
                best = deg
    return INFINITE if best is None else best


def equimultiple_along_params(s, geom: Sequence[str], params: Sequence[str]):
    """(generic_mult, special_mult, equal) for a series or polynomial.

    Equality holds exactly when some term of minimal geometric degree is
    free of the parameters; special_mult >= generic_mult always.
    """
    if isinstance(s, TruncSeries):
        if s.is_zero_to_precision():
            raise NeedsMorePrecision("equimultiplicity of a zero-to-precision series")
        body = s.body
    else:
        body = s
        if body.is_zero():
            raise PolyError("equimultiplicity of the zero polynomial")
    g = generic_order(body, geom, params)
    sp = special_order(body, geom, params)
    return g, sp, (g == sp)


# ----------------------------------------------------------------------
# exact fiber analysis


def fiber_germ_excess(p0: MPoly, y: str, x: str, rng: random.Random):
    """(e, excess) for a bivariate fiber: Weierstrass degree of the germ
    and the degree drop to its reduced part (0 means the germ is reduced)."""
    e = section_order(p0, y)
    if e is INFINITE:
        raise NotRegularError(y, "fiber is not regular in the curve variable")
    if e == 0:
        return 0, 0
    h = modular_gcd_bivariate(p0, p0.derivative(y), y, x, rng)
    if h.is_constant():
        return e, 0
    excess = section_order(h, y)
    if excess is INFINITE:
        # gcd divides p0, whose section is nonzero, so this cannot happen
        raise PolyError("gcd section vanished unexpectedly")
    return e, excess


def poly_squarefree_image_cert(p: MPoly, y: str, rng: random.Random,
                               attempts: int = 6) -> Optional[bool]:
    """True if some evaluation certifies p squarefree as a y-polynomial
    over the fraction field of the other variables; None if inconclusive."""
    others = [w for w in p.vars if w != y]
    cy = p.as_univariate(y)
    if len(cy) <= 1:
        return None
    lc = cy[-1]
    for _ in range(attempts):
        point = {w: Fraction(rng.randint(-19, 19), rng.randint(1, 7)) for w in others}
        if lc.evaluate(point) == 0:
            continue
        img = [c.evaluate(point) for c in cy]
        if is_squarefree_univariate(img):
            return True
        return None
    return None


# ----------------------------------------------------------------------
# the decision report


@dataclass
class CurveFamilyReport:
    decision: str                      # "yes" | "no" | "blocked"
    reason: str
    weier_degree: Optional[int] = None          # e
    i0: Optional[int] = None
    generic_mult: Optional[int] = None
    special_mult: Optional[int] = None          # None with special_vanishes: +infinity
    special_vanishes: bool = False
    unit_discriminant: bool = False
    precision_used: Optional[int] = None
    route: str = ""

    @property
    def is_yes(self) -> bool:
        return self.decision == "yes"


# ----------------------------------------------------------------------
# main kernel


def decide_curve_family(
    p_family: MPoly,
    y: str,
    x: str,
    params: Sequence[str],
    *,
    clean: bool,
    p_special: Optional[MPoly] = None,
    series_at: Optional[Callable[[int], TruncSeries]] = None,
    rng: Optional[random.Random] = None,
    budget: Optional[PrecisionBudget] = None,
) -> CurveFamilyReport:
    """Equisingularity of the plane-curve family cut out by ``p_family``.

    ``p_family`` lives over (x, y, params) and represents the
    discriminant germ of the surface projection, exactly up to a unit
    factor when ``clean``.  ``p_special`` must be a clean representative
    of the special (all parameters at 0) fiber; defaults to the
    specialization of a clean family representative.
    """
    rng = rng or random.Random(0xFA1)
    params = list(params)
    if p_special is None:
        if not clean:
            raise PolyError("junky family data needs an explicit clean special fiber")
        p_special = p_family.substitute_values({t: 0 for t in params if t in p_family.vars})
        p_special = p_special.drop_unused(keep=(x, y))

    if p_special.is_zero():
        # the special fiber's discriminant vanishes identically: the
        # special surface germ is non-reduced while the family is not
        return CurveFamilyReport(
            decision="no",
            reason="special-fiber discriminant vanishes identically",
            special_vanishes=True,
            route="structure",
        )

    e = section_order(p_special, y)
    if e is INFINITE:
        return CurveFamilyReport(
            decision="blocked",
            reason="discriminant is not regular in the curve variable",
            route="structure",
        )
    if e == 0:
        return CurveFamilyReport(
            decision="yes",
            reason="unit discriminant",
            weier_degree=0,
            i0=1,
            generic_mult=0,
            special_mult=0,
            unit_discriminant=True,
            route="unit",
        )

    if clean:
        return _decide_clean(p_family, y, x, list(params), p_special, rng, budget, series_at)
    return _decide_junky(p_family, y, x, list(params), p_special, rng, budget, series_at, e)


def _decide_clean(p, y, x, params, p_special, rng, budget, series_at) -> CurveFamilyReport:
    e = section_order(p_special, y)
    h = gcd(p, p.derivative(y), rng)
    if h.is_constant():
        i0 = 1
        q = p
    else:
        excess = section_order(h, y)
        if excess is INFINITE:
            raise PolyError("family gcd section vanished unexpectedly")
        i0 = 1 + excess
        q = p.exact_div(h)
    s = e - (i0 - 1)
    if s < 1:
        raise PolyError("inconsistent germ excess")

    if s == 1:
        # the reduced Weierstrass factor is linear: its discriminant is 1
        return CurveFamilyReport(
            decision="yes",
            reason="reduced germ is unibranch with multiplicity; chain entry is a constant",
            weier_degree=e, i0=i0, generic_mult=0, special_mult=0,
            route="exact-poly",
        )

    q_special = q.substitute_values({t: 0 for t in params if t in q.vars})
    q_special = q_special.drop_unused(keep=(x, y))
    if q_special.is_zero():
        return CurveFamilyReport(
            decision="no",
            reason="reduced family vanishes identically on the special fiber",
            weier_degree=e, i0=i0, special_vanishes=True, route="structure",
        )
    _, eps = fiber_germ_excess(q_special, y, x, rng)
    if eps > 0:
        # special chain entry is identically zero, family entry is not
        return CurveFamilyReport(
            decision="no",
            reason="special fiber of the reduced discriminant degenerates "
                   "(its chain entry vanishes identically)",
            weier_degree=e, i0=i0, special_vanishes=True, route="infinite-jump",
        )

    # exact equimultiplicity read off Res(Q, Q_y) when far roots are tame
    sec = section_univariate(q_special, y)
    s_fiber = next(k for k, c in enumerate(sec) if c != 0)
    ubar = sec[s_fiber:]
    cy = q.as_univariate(y)
    no_drop = (len(cy) - 1) == (s_fiber + len(ubar) - 1) and cy[-1].substitute_values(
        {w: 0 for w in cy[-1].vars}).constant_term() != 0
    far_inflation = (len(cy) - 1) - s
    if (s_fiber == s and no_drop and is_squarefree_univariate(ubar)
            and (far_inflation == 0 or series_at is None)):
        r = resultant(q, q.derivative(y), y)
        g, sp, equal = equimultiple_along_params(r, [x], params)
        return CurveFamilyReport(
            decision="yes" if equal else "no",
            reason="equimultiplicity of the reduced discriminant along the parameters",
            weier_degree=e, i0=i0,
            generic_mult=g if isinstance(g, int) else None,
            special_mult=sp if isinstance(sp, int) else None,
            route="exact-poly",
        )

    # series path for the equimultiplicity read (i0 stays exact); cheaper
    # than the full resultant once far roots inflate the y-degree
    return _equimult_by_series(q, y, x, params, e, i0, rng, budget, series_at)


def _decide_junky(p_raw, y, x, params, p_special, rng, budget, series_at, e) -> CurveFamilyReport:
    """Certificates that survive far-root contamination of the family data."""
    _, eps = fiber_germ_excess(p_special, y, x, rng)
    if eps > 0:
        cert = poly_squarefree_image_cert(p_raw, y, rng)
        if cert:
            # family reduced (so its first chain entry is the discriminant,
            # not identically zero) while the special entry vanishes
            return CurveFamilyReport(
                decision="no",
                reason="special fiber discriminant is non-reduced while the family is reduced",
                weier_degree=e, i0=1, special_vanishes=True, route="infinite-jump",
            )
    if series_at is not None:
        return _series_kernel(y, x, params, rng, budget, series_at)
    return CurveFamilyReport(
        decision="blocked",
        reason="no exact certificate applies and no series fallback was provided",
        weier_degree=e, route="structure",
    )


def _equimult_by_series(q, y, x, params, e, i0, rng, budget, series_at) -> CurveFamilyReport:
    if budget is None:
        ceiling = PrecisionBudget.for_poly(q, y).maximum
        budget = PrecisionBudget(min(8, ceiling), ceiling)

    def task(n: int):
        wd = weierstrass(q, y, n)
        coeffs = [TruncSeries(c, n) for c in wd.w.coefficient_list()]
        d_series = discriminant_series(coeffs)
        if d_series.is_zero_to_precision():
            raise NeedsMorePrecision("reduced discriminant of the family")
        return equimultiple_along_params(d_series, [x], params)

    (g, sp, equal), used = with_adequate_precision(task, budget)
    return CurveFamilyReport(
        decision="yes" if equal else "no",
        reason="equimultiplicity of the reduced discriminant along the parameters",
        weier_degree=e, i0=i0,
        generic_mult=g if isinstance(g, int) else None,
        special_mult=sp if isinstance(sp, int) else None,
        precision_used=used,
        route="series",
    )


def _series_kernel(y, x, params, rng, budget, series_at) -> CurveFamilyReport:
    """Fully truncated decision: prepare, chain, scan, equimultiplicity."""
    if budget is None:
        from . import weier as _weier
        budget = PrecisionBudget(8, _weier.MAX_PRECISION_OVERRIDE or 256)

    def task(n: int):
        g = series_at(n)
        if g.is_zero_to_precision():
            raise NeedsMorePrecision("discriminant of the family")
        body = g.body
        e = body.order_in_var(y) if y in body.vars else None
        if not isinstance(e, int):
            raise NeedsMorePrecision("regularity of the discriminant in the curve variable")
        base_prec = max(2, g.precision - e)
        try:
            wd = weierstrass(body, y, base_prec)
        except NotRegularError:
            raise NeedsMorePrecision("regularity of the discriminant in the curve variable")
        if wd.w.degree == 0:
            return CurveFamilyReport(
                decision="yes", reason="unit discriminant", weier_degree=0, i0=1,
                generic_mult=0, special_mult=0, unit_discriminant=True,
                precision_used=n, route="series",
            )
        chain = generalized_discriminants(wd.w)
        i0 = chain.first_nonzero
        entry = chain.entry(i0)
        if isinstance(entry, TruncSeries) and entry.is_zero_to_precision():
            raise NeedsMorePrecision("first nonzero chain entry")
        g_m, sp, equal = equimultiple_along_params(entry, [x], params)
        return CurveFamilyReport(
            decision="yes" if equal else "no",
            reason="equimultiplicity of the first nonzero generalized discriminant",
            weier_degree=wd.w.degree, i0=i0,
            generic_mult=g_m if isinstance(g_m, int) else None,
            special_mult=sp if isinstance(sp, int) else None,
            precision_used=n, route="series",
        )

    report, _ = with_adequate_precision(task, budget)
    return report
