"""Resultants, discriminants, and generalized discriminant chains.

Conventions (fixed once, validated by the root-formula oracle tests):

* ``resultant(p, q, v)`` is the determinant of the Sylvester matrix with
  deg(q) rows of p-coefficients on top, e.g. Res_z(z^2 - x, 2z) = -4x.
* ``discriminant(p, v)`` = (-1)^(d(d-1)/2) * Res(p, dp/dv) / lc(p), and a
  monic degree-1 polynomial has discriminant 1 (empty product).
* The chain entry D^i of a monic degree-d polynomial is the principal
  subresultant determinant of (W, W') at level i-1 with the sign
  (-1)^((d-i)(d-i+1)/2), so that D^1 is the discriminant, D^d = d, and
  every entry matches the symmetric root expansion
      D^i = sum over (d-i+1)-subsets S of prod_{k<l in S} (root_k-root_l)^2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import PolyError
from .mpoly import MPoly
from .series import TruncSeries
from .weier import WPoly

Entry = Union[MPoly, TruncSeries]


# ----------------------------------------------------------------------
# determinant engines


def det_bareiss(matrix: list[list[MPoly]]) -> MPoly:
    """Fraction-free determinant over an exact polynomial ring."""
    n = len(matrix)
    if n == 0:
        raise PolyError("empty matrix")
    variables = matrix[0][0].vars
    a = [[entry for entry in row] for row in matrix]
    sign = 1
    prev = MPoly.const(variables, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if pivot_row is None:
                return MPoly.zero(variables)
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return result if sign == 1 else -result


def det_series(matrix: list[list[TruncSeries]]) -> TruncSeries:
    """Division-free determinant by minor expansion (small matrices only).

    Dynamic programming over column subsets; precision tracking rides on
    the TruncSeries arithmetic.
    """
    n = len(matrix)
    if n == 0:
        raise PolyError("empty matrix")
    variables = matrix[0][0].vars
    prec = min(e.precision for row in matrix for e in row)
    # state: frozen column subset of size r -> minor of first r rows
    states: dict[int, TruncSeries] = {0: TruncSeries.const(variables, 1, prec)}
    for r in range(n):
        new_states: dict[int, TruncSeries] = {}
        for cols, minor in states.items():
            # sign of inserting column c flips once per used column above c
            used_above = bin(cols).count("1")
            for c in range(n):
                bit = 1 << c
                if cols & bit:
                    used_above -= 1
                    continue
                term = minor * matrix[r][c]
                if used_above % 2:
                    term = -term
                key = cols | bit
                if key in new_states:
                    new_states[key] = new_states[key] + term
                else:
                    new_states[key] = term
        states = new_states
    return states[(1 << n) - 1]


# ----------------------------------------------------------------------
# Sylvester matrices and resultants


@dataclass(frozen=True)
class SylvesterData:
    """Sylvester matrix of two coefficient lists in the distinguished variable."""

    rows: tuple[tuple[Entry, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.rows)


def _sylvester_rows(p: Sequence, q: Sequence, zero) -> list[list]:
    dp, dq = len(p) - 1, len(q) - 1
    n = dp + dq
    rows = []
    for shift in range(dq):
        row = [zero] * n
        for i, c in enumerate(reversed(p)):
            row[shift + i] = c
        rows.append(row)
    for shift in range(dp):
        row = [zero] * n
        for i, c in enumerate(reversed(q)):
            row[shift + i] = c
        rows.append(row)
    return rows


def sylvester(p: MPoly, q: MPoly, v: str) -> SylvesterData:
    cp = p.as_univariate(v)
    cq = q.as_univariate(v)
    if not cp or not cq:
        raise PolyError("resultant of the zero polynomial")
    rows = _sylvester_rows(cp, cq, MPoly.zero(cp[0].vars))
    return SylvesterData(tuple(tuple(r) for r in rows))


def _det_fraction(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def resultant(p: MPoly, q: MPoly, v: str, engine: str = "auto") -> MPoly:
    """Res_v(p, q), normalized as the Sylvester determinant.

    Small matrices go through fraction-free elimination directly.  Larger
    ones use the subresultant remainder sequence, whose final constant is
    the resultant up to a rational factor that is pinned exactly by
    evaluating the determinant at two specialization points.
    """
    cp = p.as_univariate(v)
    cq = q.as_univariate(v)
    if not cp or not cq:
        raise PolyError("resultant of the zero polynomial")
    dp, dq = len(cp) - 1, len(cq) - 1
    base = cp[0].vars
    if dp == 0 and dq == 0:
        return MPoly.const(base, 1)
    if dp == 0:
        return cp[0] ** dq
    if dq == 0:
        return cq[0] ** dp
    if engine == "bareiss" or (engine == "auto" and (dp + dq <= 12 or not base)):
        rows = _sylvester_rows(cp, cq, MPoly.zero(base))
        return det_bareiss(rows)
    result = _resultant_prs_calibrated(cp, cq, base)
    if result is None:
        rows = _sylvester_rows(cp, cq, MPoly.zero(base))
        return det_bareiss(rows)
    return result


def _resultant_prs_calibrated(cp, cq, base) -> MPoly | None:
    from .polygcd import subresultant_prs
    import random as _random

    flipped = False
    a, b = list(cp), list(cq)
    if len(a) < len(b):
        a, b = b, a
        flipped = True
    seq = subresultant_prs(a, b)
    last = seq[-1]
    if len(last) != 1:
        return MPoly.zero(base)  # nontrivial gcd in v
    cand = last[0]
    rng = _random.Random(0xCA11)
    calibrated = None
    checks = 0
    for _ in range(24):
        point = {w: Fraction(rng.randint(-9, 9)) for w in base}
        if cp[-1].evaluate(point) == 0 or cq[-1].evaluate(point) == 0:
            continue
        rows = _sylvester_rows([c.evaluate(point) for c in cp],
                               [c.evaluate(point) for c in cq], Fraction(0))
        det = _det_fraction(rows)
        pv = cand.evaluate(point)
        if calibrated is None:
            if pv == 0:
                if det != 0:
                    return None
                continue
            calibrated = cand * (det / pv)
            checks = 0
            continue
        if calibrated.evaluate(point) != det:
            return None
        checks += 1
        if checks >= 1:
            return calibrated
    return None if calibrated is None or checks < 1 else calibrated


def resultant_series(p_coeffs: Sequence[TruncSeries], q_coeffs: Sequence[TruncSeries]) -> TruncSeries:
    """Resultant of coefficient lists of truncated series (germ context)."""
    p_coeffs = list(p_coeffs)
    q_coeffs = list(q_coeffs)
    if not p_coeffs or not q_coeffs:
        raise PolyError("resultant of the zero polynomial")
    dp, dq = len(p_coeffs) - 1, len(q_coeffs) - 1
    variables = p_coeffs[0].vars
    prec = min(c.precision for c in (*p_coeffs, *q_coeffs))
    if dp == 0 and dq == 0:
        return TruncSeries.const(variables, 1, prec)
    if dp == 0:
        return p_coeffs[0] ** dq
    if dq == 0:
        return q_coeffs[0] ** dp
    zero = TruncSeries.zero(variables, prec)
    rows = _sylvester_rows(p_coeffs, q_coeffs, zero)
    return det_series(rows)


def discriminant(p: MPoly, v: str) -> MPoly:
    """Discriminant with the lc-division convention; degree 1 gives 1."""
    d = p.degree_in(v)
    if d <= 0:
        raise PolyError("discriminant needs positive degree")
    base_vars = tuple(w for w in p.vars if w != v)
    if d == 1:
        return MPoly.const(base_vars, 1)
    res = resultant(p, p.derivative(v), v)
    lc = p.as_univariate(v)[-1]
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return res.exact_div(lc) * sign


def discriminant_series(coeffs: Sequence[TruncSeries]) -> TruncSeries:
    """Discriminant of a monic coefficient list over truncated series."""
    coeffs = list(coeffs)
    d = len(coeffs) - 1
    if d <= 0:
        raise PolyError("discriminant needs positive degree")
    variables = coeffs[0].vars
    if not coeffs[-1].body.is_constant() or coeffs[-1].constant_term() == 0:
        raise PolyError("series discriminant expects an invertible leading coefficient")
    if d == 1:
        return TruncSeries.const(variables, 1, coeffs[0].precision)
    deriv = [coeffs[i] * i for i in range(1, d + 1)]
    res = resultant_series(coeffs, deriv)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    lc = coeffs[-1].constant_term()
    scale = Fraction(sign) / lc
    return res * scale


# ----------------------------------------------------------------------
# principal subresultants and the generalized discriminant chain


def _sres_matrix(cp: Sequence, cq: Sequence, k: int, zero):
    """Sylvester submatrix whose determinant is the level-k principal subresultant."""
    p_deg, q_deg = len(cp) - 1, len(cq) - 1
    size = p_deg + q_deg - 2 * k
    rows = []
    # rows v^(q_deg-k-1) p ... v^0 p, then v^(p_deg-k-1) q ... v^0 q
    for s in range(q_deg - k - 1, -1, -1):
        rows.append(("p", s))
    for s in range(p_deg - k - 1, -1, -1):
        rows.append(("q", s))
    top_degree = p_deg + q_deg - k - 1
    matrix = []
    for which, s in rows:
        coeffs = cp if which == "p" else cq
        deg = p_deg if which == "p" else q_deg
        row = []
        for col in range(size):
            degree_wanted = top_degree - col
            idx = degree_wanted - s
            row.append(coeffs[idx] if 0 <= idx <= deg else zero)
        matrix.append(row)
    return matrix


def sres_principal(cp: Sequence[MPoly], cq: Sequence[MPoly], k: int) -> MPoly:
    base = cp[-1].vars
    p_deg, q_deg = len(cp) - 1, len(cq) - 1
    if k == q_deg and p_deg == q_deg + 1:
        return cq[-1]
    if k >= q_deg:
        raise PolyError("subresultant level out of range")
    m = _sres_matrix(cp, cq, k, MPoly.zero(base))
    return det_bareiss(m)


def sres_principal_series(cp: Sequence[TruncSeries], cq: Sequence[TruncSeries], k: int) -> TruncSeries:
    variables = cp[-1].vars
    p_deg, q_deg = len(cp) - 1, len(cq) - 1
    if k == q_deg and p_deg == q_deg + 1:
        return cq[-1]
    if k >= q_deg:
        raise PolyError("subresultant level out of range")
    prec = min(c.precision for c in (*cp, *cq))
    m = _sres_matrix(cp, cq, k, TruncSeries.zero(variables, prec))
    return det_series(m)


def _chain_sign(d: int, i: int) -> int:
    e = (d - i) * (d - i + 1) // 2
    return -1 if e % 2 else 1


@dataclass
class DiscChain:
    """Generalized discriminants D^1 ... D^d of a monic polynomial.

    ``entries[i-1]`` holds D^i; D^d is the nonzero constant d, so the scan
    for the first nonzero entry always terminates.
    """

    degree: int
    entries: list[Entry]
    first_nonzero: int

    def entry(self, i: int) -> Entry:
        return self.entries[i - 1]


def _entry_is_nonzero(e: Entry) -> bool:
    if isinstance(e, TruncSeries):
        return not e.is_zero_to_precision()
    return not e.is_zero()


def generalized_discriminants(w: Union[MPoly, WPoly], v: str | None = None) -> DiscChain:
    """Chain of a monic polynomial in v (exact) or of a WPoly (truncated).

    For truncated input an entry counts as identically zero when it
    vanishes to its precision; the terminal constant D^d = d guarantees
    the scan terminates.
    """
    if isinstance(w, WPoly):
        return _chain_series(w)
    if v is None:
        raise PolyError("variable name required for polynomial chains")
    return _chain_poly(w, v)


def _chain_poly(w: MPoly, v: str) -> DiscChain:
    cw = w.as_univariate(v)
    d = len(cw) - 1
    if d < 1:
        raise PolyError("chain needs positive degree")
    if not cw[-1].is_constant() or cw[-1].constant_term() != 1:
        raise PolyError("chain input must be monic")
    base = cw[0].vars
    if d == 1:
        return DiscChain(1, [MPoly.const(base, 1)], 1)
    cderiv = [cw[i] * i for i in range(1, d + 1)]
    entries: list[Entry] = []
    for i in range(1, d + 1):
        s = sres_principal(cw, cderiv, i - 1)
        entries.append(s * _chain_sign(d, i))
    first = next(i for i in range(1, d + 1) if _entry_is_nonzero(entries[i - 1]))
    return DiscChain(d, entries, first)


def _chain_series(w: WPoly) -> DiscChain:
    d = w.degree
    if d < 1:
        raise PolyError("chain needs positive degree")
    n = w.precision
    base = w.coeffs[0].vars if w.coeffs else ()
    if d == 1:
        return DiscChain(1, [TruncSeries.const(base, 1, n)], 1)
    coeffs = [TruncSeries(c, n) for c in w.coefficient_list()]
    cderiv = [coeffs[i] * i for i in range(1, d + 1)]
    entries: list[Entry] = []
    for i in range(1, d + 1):
        s = sres_principal_series(coeffs, cderiv, i - 1)
        entries.append(s * _chain_sign(d, i))
    first = next(i for i in range(1, d + 1) if _entry_is_nonzero(entries[i - 1]))
    return DiscChain(d, entries, first)


def idiscr(chain: DiscChain) -> int:
    """Index of the first generalized discriminant that is not identically zero."""
    return chain.first_nonzero


# ----------------------------------------------------------------------
# the root-formula oracle and the reduced-discriminant constant


def root_formula_oracle(roots: Sequence[Fraction]) -> list[Fraction]:
    """Evaluate the chain D^1..D^d directly from the roots.

    D^(d-j+1) sums, over all j-element subsets of the root multiset, the
    product of squared differences inside the subset.
    """
    roots = [Fraction(r) for r in roots]
    d = len(roots)
    if d == 0:
        raise PolyError("no roots given")
    out = [Fraction(0)] * d
    for j in range(1, d + 1):
        total = Fraction(0)
        for subset in itertools.combinations(range(d), j):
            prod = Fraction(1)
            for a, b in itertools.combinations(subset, 2):
                prod *= (roots[a] - roots[b]) ** 2
                if prod == 0:
                    break
            total += prod
        out[d - j] = total
    return out


def poly_from_roots(roots: Sequence[Fraction], variables: Sequence[str], v: str) -> MPoly:
    p = MPoly.const(variables, 1)
    xv = MPoly.var(variables, v)
    for r in roots:
        p = p * (xv - MPoly.const(variables, r))
    return p


def lemma_a1_constant(pattern: Sequence[tuple[Fraction, int]],
                      perturbations: int = 2) -> Fraction:
    """Constant C with  D^(d-s+1)(F) = C * Disc(F_red)  for a monic F
    with s distinct roots of the given multiplicities.

    The constant is recomputed at perturbed root positions with the same
    multiplicity pattern; it must be positive and stable.
    """
    pattern = [(Fraction(r), int(m)) for r, m in pattern]
    if len({r for r, _ in pattern}) != len(pattern):
        raise PolyError("roots in the pattern must be distinct")

    def constant_at(roots_: list[tuple[Fraction, int]]) -> Fraction:
        full = []
        for r, m in roots_:
            full.extend([r] * m)
        d = len(full)
        s = len(roots_)
        chain = root_formula_oracle(full)
        num = chain[d - s + 1 - 1]
        red = root_formula_oracle([r for r, _ in roots_])
        den = red[0] if s > 1 else Fraction(1)
        if den == 0:
            raise PolyError("reduced discriminant vanished (roots not distinct?)")
        return num / den

    c = constant_at(pattern)
    if c <= 0:
        raise PolyError(f"reduced-discriminant constant is not positive: {c}")
    for k in range(1, perturbations + 1):
        shift = Fraction(k, 2 * k + 3)
        moved = [(r + shift * (idx + 1), m) for idx, (r, m) in enumerate(pattern)]
        if len({r for r, _ in moved}) != len(moved):
            continue
        c2 = constant_at(moved)
        if c2 != c:
            raise PolyError("constant is not invariant under root perturbation")
    return c
