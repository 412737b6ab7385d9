"""Multivariate gcd, squarefree parts, and coprimality certificates.

The general gcd recurses on variables with content/primitive-part
splitting and a subresultant PRS core.  Two accelerations matter in
practice and are both *certified*, never heuristic:

* a coprimality certificate from a single lucky evaluation (the gcd
  degree can only grow under specialization when the leading coefficient
  survives, so a trivial specialized gcd proves triviality), and
* a modular (evaluate-and-interpolate) bivariate gcd whose candidate is
  verified by exact division before being returned.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import PolyError
from .mpoly import MPoly, align


# ----------------------------------------------------------------------
# pseudo-division and the subresultant PRS


def poly_divmod(num: list[MPoly], den: list[MPoly],
                bound: int | None = None) -> tuple[list[MPoly], list[MPoly]]:
    """Division with remainder of coefficient lists when den is monic-invertible.

    Requires the leading coefficient of ``den`` to be an invertible
    constant.  With ``bound`` all coefficient products are truncated at
    that total degree (valid inside computations modulo a degree filtration).
    """
    if not den or den[-1].is_zero():
        raise PolyError("division by zero polynomial")
    lead = den[-1]
    if not lead.is_constant():
        raise PolyError("poly_divmod needs a constant leading coefficient")
    inv = Fraction(1) / lead.constant_term()
    rem = list(num)
    dq = len(num) - len(den)
    if dq < 0:
        return [], rem
    from .mpoly import mul_trunc
    quot: list[MPoly] = [MPoly.zero(lead.vars)] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[k + len(den) - 1] * inv
        quot[k] = c
        if not c.is_zero():
            for i, d in enumerate(den):
                prod = mul_trunc(c, d, bound) if bound is not None else c * d
                rem[k + i] = rem[k + i] - prod
    rem = rem[: len(den) - 1]
    return quot, _strip(rem)


def _strip(coeffs: list[MPoly]) -> list[MPoly]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def prem(a: list[MPoly], b: list[MPoly]) -> list[MPoly]:
    """Pseudo-remainder of coefficient lists: lc(b)^(da-db+1) * a  mod  b."""
    a = _strip(list(a))
    b = _strip(list(b))
    if not b:
        raise PolyError("pseudo-division by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return a
    lc_b = b[-1]
    zero = MPoly.zero(lc_b.vars)
    rem = list(a)
    for k in range(da - db, -1, -1):
        while len(rem) <= db + k:
            rem.append(zero)
        top = rem[db + k]
        # uniform scaling keeps the total factor at lc(b)^(delta+1)
        rem = [c * lc_b for c in rem]
        if not top.is_zero():
            for i in range(db + 1):
                rem[k + i] = rem[k + i] - top * b[i]
        del rem[db + k:]
    return _strip(rem)


def subresultant_prs(a: list[MPoly], b: list[MPoly]) -> list[list[MPoly]]:
    """Subresultant polynomial remainder sequence (coefficient-list form).

    Entries keep subdeterminant-bounded coefficient growth; every division
    below is exact in the coefficient ring.
    """
    a = _strip(list(a))
    b = _strip(list(b))
    if not a or not b:
        return [x for x in (a, b) if x]
    if len(a) < len(b):
        a, b = b, a
    seq = [a, b]
    vars_ = a[-1].vars
    g = MPoly.const(vars_, 1)
    h = MPoly.const(vars_, 1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        r = prem(a, b)
        if not r:
            break
        divisor = g * (h ** delta)
        r = [c.exact_div(divisor) for c in r]
        seq.append(r)
        a, b = b, r
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta).exact_div(h ** (delta - 1))
        # delta == 0 leaves h unchanged
    return seq


# ----------------------------------------------------------------------
# gcd


def _content_free_vars(p: MPoly) -> list[str]:
    used = set()
    for expo in p.terms:
        for v, e in zip(p.vars, expo):
            if e:
                used.add(v)
    return [v for v in p.vars if v in used]


def gcd(p: MPoly, q: MPoly, _rng: random.Random | None = None) -> MPoly:
    """Primitive greatest common divisor, deglex-monic normalized.

    gcd(0, 0) = 0; a gcd with a nonzero constant is 1.
    """
    p, q = align(p, q)
    if p.is_zero() and q.is_zero():
        return p
    if p.is_zero():
        return q.monic_deglex()
    if q.is_zero():
        return p.monic_deglex()
    if p.is_constant() or q.is_constant():
        return MPoly.const(p.vars, 1)
    rng = _rng or random.Random(0x5EED)
    used_p = _content_free_vars(p)
    used_q = _content_free_vars(q)
    common = [v for v in used_p if v in used_q]
    if not common:
        return MPoly.const(p.vars, 1)
    # main variable: smallest joint degree keeps the PRS short
    v = min(common, key=lambda w: (min(p.degree_in(w), q.degree_in(w)), common.index(w)))
    cp = p.as_univariate(v)
    cq = q.as_univariate(v)
    cont_p = gcd_many(cp, rng)
    cont_q = gcd_many(cq, rng)
    cont = gcd(cont_p, cont_q, rng)
    pp_p = _strip([c.exact_div(cont_p) for c in cp]) if not cont_p.is_constant() else cp
    pp_q = _strip([c.exact_div(cont_q) for c in cq]) if not cont_q.is_constant() else cq
    if _coprime_by_evaluation(pp_p, pp_q, v, rng):
        core = MPoly.const(p.vars, 1)
    else:
        used = set()
        for c in (*pp_p, *pp_q):
            used.update(_content_free_vars(c))
        if len(used) == 1:
            # bivariate: evaluate-and-interpolate with verification
            other = next(iter(used))
            a = MPoly.from_univariate(pp_p, v)
            b = MPoly.from_univariate(pp_q, v)
            core = modular_gcd_bivariate(a, b, v, other, rng).extend(p.vars)
        else:
            seq = subresultant_prs(pp_p, pp_q)
            last = seq[-1]
            if len(last) == 1:
                core = MPoly.const(p.vars, 1)
            else:
                cont_last = gcd_many(last, rng)
                pp_last = [c.exact_div(cont_last) for c in last]
                core = MPoly.from_univariate(pp_last, v).extend(p.vars)
    result = (cont.extend(p.vars) * core).monic_deglex()
    return result


def gcd_many(polys: Sequence[MPoly], rng: random.Random | None = None) -> MPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise PolyError("gcd of empty/zero family")
    acc = polys[0].monic_deglex()
    for p in polys[1:]:
        if acc.is_constant():
            break
        acc = gcd(acc, p, rng)
    return acc


def _rand_fraction(rng: random.Random) -> Fraction:
    num = rng.randint(-17, 17)
    den = rng.randint(1, 7)
    if num == 0:
        num = 1
    return Fraction(num, den)


def _coprime_by_evaluation(
    a: list[MPoly], b: list[MPoly], v: str, rng: random.Random, attempts: int = 5
) -> bool:
    """True only with a certificate: some specialization keeps both leading
    coefficients nonzero and has univariate gcd 1."""
    base_vars = [w for w in a[-1].vars]
    for k in range(attempts):
        if k == 0:
            point = {w: Fraction(2 + 3 * i) for i, w in enumerate(base_vars)}
        else:
            point = {w: Fraction(rng.randint(-40, 40)) for w in base_vars}
        la = a[-1].evaluate(point)
        lb = b[-1].evaluate(point)
        if la == 0 or lb == 0:
            continue
        ua = [c.evaluate(point) for c in a]
        ub = [c.evaluate(point) for c in b]
        if _gcd_frac_univariate_degree(ua, ub) == 0:
            return True
        # nontrivial image: maybe an unlucky point, try another
    return False


def _to_int_list(a: list[Fraction]) -> list[int]:
    from math import lcm
    den = 1
    for c in a:
        den = lcm(den, c.denominator)
    return [int(c * den) for c in a]


def _int_content(a: list[int]) -> int:
    from math import gcd as igcd
    g = 0
    for c in a:
        g = igcd(g, c)
        if g == 1:
            return 1
    return g or 1


def gcd_univariate_int(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of integer coefficient lists (primitive-PRS Euclid)."""
    def stripz(c):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return c

    a = stripz(a)
    b = stripz(b)
    if not a:
        return b
    if not b:
        return a
    ca, cb = _int_content(a), _int_content(b)
    from math import gcd as igcd
    cont = igcd(ca, cb)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder, then strip content to control growth
        da, db = len(a) - 1, len(b) - 1
        lc = b[-1]
        rem = list(a)
        for k in range(da - db, -1, -1):
            while len(rem) <= db + k:
                rem.append(0)
            top = rem[db + k]
            rem = [c * lc for c in rem]
            if top:
                for i in range(db + 1):
                    rem[k + i] -= top * b[i]
            del rem[db + k:]
        rem = stripz(rem)
        if rem:
            cr = _int_content(rem)
            rem = [c // cr for c in rem]
        a, b = b, rem
    return [c * cont for c in a]


def _gcd_frac_univariate_degree(a: list[Fraction], b: list[Fraction]) -> int:
    a = _strip_frac(a)
    b = _strip_frac(b)
    if not a or not b:
        return max(len(a), len(b)) - 1
    g = gcd_univariate_int(_to_int_list(a), _to_int_list(b))
    return len(g) - 1


def _strip_frac(c: list[Fraction]) -> list[Fraction]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _rem_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        if c:
            for i in range(len(b)):
                a[k + i] -= c * b[i]
    return _strip_frac(a[: len(b) - 1])


def gcd_univariate_fraction(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic univariate gcd over the rationals (coefficient lists)."""
    a = _strip_frac(a)
    b = _strip_frac(b)
    if not a and not b:
        return []
    if not a or not b:
        g = a or b
    else:
        g = [Fraction(c) for c in gcd_univariate_int(_to_int_list(a), _to_int_list(b))]
    inv = 1 / g[-1]
    return [c * inv for c in g]


# ----------------------------------------------------------------------
# squarefree part


def squarefree_part(p: MPoly, rng: random.Random | None = None) -> MPoly:
    """Product of the distinct irreducible factors of ``p``, deglex-monic.

    Computed as p / gcd(p, all first partials).
    """
    if p.is_zero():
        raise PolyError("squarefree part of zero")
    if p.is_constant():
        return MPoly.const(p.vars, 1)
    rng = rng or random.Random(0x5EED)
    g = p
    for v in _content_free_vars(p):
        if g.is_constant():
            break
        g = gcd(g, p.derivative(v), rng)
    if g.is_constant():
        return p.monic_deglex()
    return p.exact_div(g).monic_deglex()


def is_squarefree_univariate(coeffs: list[Fraction]) -> bool:
    c = _strip_frac(list(coeffs))
    if len(c) <= 1:
        return True
    deriv = [c[i] * i for i in range(1, len(c))]
    return _gcd_frac_univariate_degree(c, deriv) == 0


# ----------------------------------------------------------------------
# modular bivariate gcd (evaluate in one variable, interpolate back)


def modular_gcd_bivariate(p: MPoly, q: MPoly, main: str, other: str,
                          rng: random.Random | None = None) -> MPoly:
    """gcd of two bivariate polynomials, primitive in main-variable form.

    Evaluates ``other`` at rational points, takes univariate gcds, and
    interpolates; the candidate is certified by exact division, with the
    subresultant gcd as fallback.  Output normalization matches gcd().
    """
    rng = rng or random.Random(0xD1CE)
    p2, q2 = align(p, q)
    variables = p2.vars
    if any(v not in (main, other) for v in _content_free_vars(p2) + _content_free_vars(q2)):
        raise PolyError("modular_gcd_bivariate expects bivariate input")
    p2 = p2.drop_unused(keep=(main, other)).extend((other, main))
    q2 = q2.drop_unused(keep=(main, other)).extend((other, main))
    cp = p2.as_univariate(main)
    cq = q2.as_univariate(main)
    lc_p, lc_q = cp[-1], cq[-1]
    gamma = gcd(lc_p, lc_q)   # multiple of the true gcd's leading coefficient
    bound = min(max(c.degree_in(other) for c in cp),
                max(c.degree_in(other) for c in cq)) + gamma.degree_in(other) + 2

    images: list[tuple[Fraction, list[Fraction]]] = []
    gcd_degree: int | None = None
    tried: set[Fraction] = set()
    attempts = 0
    while len(images) < bound and attempts < 40 * bound:
        attempts += 1
        t = Fraction(rng.randint(-4 * bound, 4 * bound))
        if t in tried:
            continue
        tried.add(t)
        point = {other: t}
        if lc_p.evaluate(point) == 0 or lc_q.evaluate(point) == 0:
            continue
        ua = [c.evaluate(point) for c in cp]
        ub = [c.evaluate(point) for c in cq]
        g_img = gcd_univariate_fraction(ua, ub)
        d = len(g_img) - 1
        if gcd_degree is None or d < gcd_degree:
            gcd_degree = d
            images = []
        if d == gcd_degree:
            scale = gamma.evaluate(point)
            images.append((t, [c * scale for c in g_img]))
            if gcd_degree == 0:
                break
    if gcd_degree is None:
        raise PolyError("no admissible evaluation point found")
    if gcd_degree == 0:
        return MPoly.const(variables, 1)

    cols = gcd_degree + 1
    xs = [t for t, _ in images]
    candidate_coeffs: list[MPoly] = []
    for j in range(cols):
        ys = [img[j] if j < len(img) else Fraction(0) for _, img in images]
        candidate_coeffs.append(_interpolate(xs, ys, variables, other))
    candidate = MPoly.from_univariate(candidate_coeffs, main).extend(variables)
    cont = gcd_many(candidate.as_univariate(main), rng)
    if not cont.is_constant():
        candidate = candidate.exact_div(cont)
    candidate = candidate.monic_deglex()
    if candidate.divides(p2) and candidate.divides(q2):
        return candidate
    # interpolation failed (unlucky points): exact subresultant fallback
    seq = subresultant_prs(cp, cq)
    last = seq[-1]
    if len(last) == 1:
        return MPoly.const(variables, 1)
    cont_last = gcd_many(last, rng)
    pp_last = [c.exact_div(cont_last) for c in last]
    return MPoly.from_univariate(pp_last, main).extend(variables).monic_deglex()


def _interpolate(xs: list[Fraction], ys: list[Fraction],
                 variables: tuple[str, ...], var: str) -> MPoly:
    """Newton interpolation through exact rational points."""
    n = len(xs)
    table = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level])
    x = MPoly.var(variables, var)
    poly = MPoly.zero(variables)
    for i in range(n - 1, -1, -1):
        poly = poly * (x - MPoly.const(variables, xs[i])) + MPoly.const(variables, table[i])
    return poly
