"""Weierstrass preparation at finite precision.

``weierstrass`` factors a polynomial germ f = u * W where W is monic of
degree d in the distinguished variable with coefficients vanishing at the
origin and u is a unit.  The factorization is computed by quadratic
Hensel lifting of the coprime splitting f(0, v) = v^d * (unit cofactor),
lifting modulo successive powers of the maximal ideal of the base
variables (family parameters are base variables: the germ sits at the
origin of the full parameter space).

The module also hosts the adaptive precision controller used by every
germ-level order decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import NotRegularError, PolyError, PrecisionExhaustedError, ZeroToPrecision
from .mpoly import MPoly, mul_trunc
from .polygcd import poly_divmod
from .series import TruncSeries


def regularity(f: MPoly, v: str) -> int | None:
    """Order of f restricted to the v-axis, or None when not regular in v."""
    if f.is_zero():
        raise PolyError("regularity of the zero polynomial")
    o = f.order_in_var(v)
    return None if not isinstance(o, int) else o


@dataclass(frozen=True)
class WPoly:
    """Monic distinguished polynomial  v^d + sum a_i v^(d-i),  a_i(0) = 0."""

    var: str
    degree: int
    coeffs: tuple[TruncSeries, ...]  # a_1 ... a_d, one shared precision

    def __post_init__(self):
        for a in self.coeffs:
            if a.constant_term() != 0:
                raise PolyError("Weierstrass coefficient does not vanish at 0")
        if len(self.coeffs) != self.degree:
            raise PolyError("coefficient count does not match degree")

    @property
    def precision(self) -> int:
        if not self.coeffs:
            return 1
        return min(a.precision for a in self.coeffs)

    def coefficient_list(self) -> list[MPoly]:
        """Ascending coefficient list in the distinguished variable."""
        base = self.coeffs[0].vars if self.coeffs else ()
        out = [a.body for a in reversed(self.coeffs)]
        out.append(MPoly.const(base, 1))
        return out

    def to_mpoly(self) -> MPoly:
        if self.degree == 0:
            return MPoly.const((self.var,), 1)
        return MPoly.from_univariate(self.coefficient_list(), self.var)


@dataclass(frozen=True)
class WeierstrassData:
    """Result of a preparation: f = unit * w modulo base degree `precision`."""

    w: WPoly
    unit: tuple[MPoly, ...]   # ascending v-coefficients, correct mod base degree
    var: str
    base_vars: tuple[str, ...]
    precision: int

    def unit_poly(self) -> MPoly:
        return MPoly.from_univariate(list(self.unit), self.var)

    def unit_series(self) -> TruncSeries:
        """The unit as a total-degree truncated series over all variables."""
        return TruncSeries(self.unit_poly(), self.precision)


def _f0_univariate(f: MPoly, v: str) -> list[Fraction]:
    origin = {w: 0 for w in f.vars if w != v}
    g = f.substitute_values(origin)
    coeffs = [Fraction(0)] * (g.degree_in(v) + 1)
    i = g.vars.index(v)
    for expo, c in g.terms.items():
        coeffs[expo[i]] += c
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _bezout(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """s, t with s*a + t*b = 1 for coprime univariate rationals."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]

    def strip(c):
        while c and c[-1] == 0:
            c.pop()
        return c

    def sub(x, y):
        out = list(x) + [Fraction(0)] * max(0, len(y) - len(x))
        for i, c in enumerate(y):
            out[i] -= c
        return strip(out)

    def mul(x, y):
        if not x or not y:
            return []
        out = [Fraction(0)] * (len(x) + len(y) - 1)
        for i, ci in enumerate(x):
            if ci:
                for j, cj in enumerate(y):
                    out[i + j] += ci * cj
        return strip(out)

    while strip(list(r1)):
        q = []
        r = list(r0)
        dq = len(r) - len(r1)
        if dq >= 0:
            q = [Fraction(0)] * (dq + 1)
            inv = 1 / r1[-1]
            for k in range(dq, -1, -1):
                c = (r[k + len(r1) - 1]) * inv
                q[k] = c
                if c:
                    for i in range(len(r1)):
                        r[k + i] -= c * r1[i]
            r = strip(r[: len(r1) - 1])
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if len(r0) != 1:
        raise PolyError("inputs are not coprime")
    inv = 1 / r0[0]
    return [c * inv for c in s0], [c * inv for c in t0]


def _to_coeff_polys(c: list[Fraction], base: tuple[str, ...]) -> list[MPoly]:
    return [MPoly.const(base, x) for x in c]


def _ltrunc(coeffs: list[MPoly], bound: int) -> list[MPoly]:
    return [c.truncate_total(bound) for c in coeffs]


def _lstrip(coeffs: list[MPoly]) -> list[MPoly]:
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return out


def _ladd(a: list[MPoly], b: list[MPoly], base) -> list[MPoly]:
    n = max(len(a), len(b))
    zero = MPoly.zero(base)
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(x + y)
    return _lstrip(out)


def _lneg(a: list[MPoly]) -> list[MPoly]:
    return [-c for c in a]


def _lmul(a: list[MPoly], b: list[MPoly], base, bound: int) -> list[MPoly]:
    if not a or not b:
        return []
    out = [MPoly.zero(base) for _ in range(len(a) + len(b) - 1)]
    for i, ci in enumerate(a):
        if ci.is_zero():
            continue
        for j, cj in enumerate(b):
            if cj.is_zero():
                continue
            out[i + j] = out[i + j] + mul_trunc(ci, cj, bound)
    return _lstrip(out)


def weierstrass(f: MPoly, v: str, precision: int) -> WeierstrassData:
    """Prepare f in v to the requested base-variable precision.

    Returns W (monic, degree = regularity order) and the unit cofactor u
    with u*W = f modulo total degree ``precision`` in the base variables.
    """
    d = regularity(f, v)
    if d is None:
        raise NotRegularError(v)
    base = tuple(w for w in f.vars if w != v)
    f0 = _f0_univariate(f, v)
    if d == 0:
        w = WPoly(v, 0, ())
        unit = tuple(c.truncate_total(precision) for c in f.extend(base + (v,)).as_univariate(v))
        return WeierstrassData(w, unit, v, base, precision)
    u0 = f0[d:]

    f_coeffs = [c.truncate_total(precision) for c in f.extend(base + (v,)).as_univariate(v)]
    g = _to_coeff_polys(u0, base)            # unit factor, v-degree D-d
    h = [MPoly.zero(base)] * d + [MPoly.const(base, 1)]  # v^d, stays monic
    s_c, t_c = _bezout(u0, [Fraction(0)] * d + [Fraction(1)])
    s = _to_coeff_polys(s_c, base)
    t = _to_coeff_polys(t_c, base)

    known = 1
    while known < precision:
        known = min(2 * known, precision)
        e = _ladd(f_coeffs, _lneg(_lmul(g, h, base, known)), base)
        e = _lstrip(_ltrunc(e, known))
        if e:
            q, r = poly_divmod(_lmul(s, e, base, known), h, bound=known)
            g = _lstrip(_ltrunc(_ladd(_ladd(g, _lmul(t, e, base, known), base),
                                      _lmul(q, g, base, known), base), known))
            h = _ladd(h, r, base)
        b = _ladd(_ladd(_lmul(s, g, base, known), _lmul(t, h, base, known), base),
                  [MPoly.const(base, -1)], base)
        b = _lstrip(_ltrunc(b, known))
        if b:
            c2, d2 = poly_divmod(_lmul(s, b, base, known), h, bound=known)
            s = _lstrip(_ltrunc(_ladd(s, _lneg(d2), base), known))
            t = _lstrip(_ltrunc(_ladd(t, _lneg(_ladd(_lmul(t, b, base, known),
                                                     _lmul(c2, g, base, known), base)), base),
                                known))

    tail = []
    for i in range(d - 1, -1, -1):
        a_i = h[i] if i < len(h) else MPoly.zero(base)
        tail.append(TruncSeries(a_i, precision))
    w = WPoly(v, d, tuple(tail))
    unit = tuple(g) if g else (MPoly.zero(base),)
    if unit[0].constant_term() == 0:
        raise PolyError("preparation produced a non-unit cofactor")
    return WeierstrassData(w, unit, v, base, precision)


# ----------------------------------------------------------------------
# precision control


# CLI-settable ceiling for every derived precision budget
MAX_PRECISION_OVERRIDE: int | None = None


@dataclass
class PrecisionBudget:
    """Doubling precision schedule with a hard ceiling."""

    current: int
    maximum: int

    def __post_init__(self):
        if self.current < 1 or self.current > self.maximum:
            raise PolyError("invalid precision budget")

    @classmethod
    def for_poly(cls, f: MPoly, v: str | None = None, maximum: int | None = None) -> "PrecisionBudget":
        deg = f.total_degree()
        deg = 1 if not isinstance(deg, int) else max(deg, 1)
        start = 2 * deg + 2
        if maximum is None:
            if MAX_PRECISION_OVERRIDE is not None:
                maximum = MAX_PRECISION_OVERRIDE
            else:
                dv = max(f.degree_in(v), 1) if v is not None else deg
                maximum = max(4 * deg * dv * dv, start)
        start = min(start, maximum)
        return cls(start, max(maximum, start))


class NeedsMorePrecision(Exception):
    """Internal signal: the task saw a ZeroToPrecision it must decide."""

    def __init__(self, quantity: str):
        self.quantity = quantity
        super().__init__(quantity)


def with_adequate_precision(task: Callable[[int], object], budget: PrecisionBudget):
    """Run ``task`` at doubling precisions until it returns a decided value.

    The task may signal indecision either by returning a ZeroToPrecision
    marker or by raising NeedsMorePrecision.  Returns (result, precision).
    """
    n = budget.current
    quantity = "order"
    while True:
        try:
            result = task(n)
        except NeedsMorePrecision as exc:
            quantity = exc.quantity
            result = ZeroToPrecision(n)
        if not isinstance(result, ZeroToPrecision):
            return result, n
        if n >= budget.maximum:
            raise PrecisionExhaustedError(quantity, n)
        n = min(2 * n, budget.maximum)
