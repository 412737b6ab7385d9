"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a mapping from exponent tuples to nonzero ``Fraction``
coefficients, together with an ordered tuple of variable names.  The
representation is canonical: zero coefficients are never stored and the
exponent tuples always have one entry per variable.  All operations are
pure and return new objects; instances are treated as immutable.

This exactness is the point of the package: multiplicities and
discriminant orders are certified integers, so no floating-point
arithmetic is allowed anywhere near them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import INFINITE, PolyError, SingularMatrixError, _InfiniteOrder

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise PolyError(f"not an exact scalar: {value!r}")


def deglex_key(expo: Exponent) -> tuple:
    return (sum(expo), expo)


class MPoly:
    """Sparse exact polynomial in an ordered set of named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None):
        self.vars: tuple[str, ...] = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise PolyError(f"duplicate variable names in {self.vars}")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            n = len(self.vars)
            for expo, coeff in terms.items():
                expo = tuple(expo)
                if len(expo) != n or any(e < 0 for e in expo):
                    raise PolyError(f"bad exponent {expo} for variables {self.vars}")
                c = _as_fraction(coeff)
                if c != 0:
                    clean[expo] = clean.get(expo, Fraction(0)) + c
                    if clean[expo] == 0:
                        del clean[expo]
        self.terms: dict[Exponent, Fraction] = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MPoly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables: Sequence[str], value: Scalar) -> "MPoly":
        c = _as_fraction(value)
        if c == 0:
            return cls.zero(variables)
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MPoly":
        variables = tuple(variables)
        if name not in variables:
            raise PolyError(f"unknown variable {name!r}")
        expo = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {expo: Fraction(1)})

    # ------------------------------------------------------------------
    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        a, b = align(self, other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for expo in sorted(self.terms, key=deglex_key, reverse=True):
            coeff = self.terms[expo]
            factors = []
            for name, e in zip(self.vars, expo):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(coeff)
            elif coeff == 1:
                body = mono
            elif coeff == -1:
                body = f"-{mono}"
            else:
                body = f"{coeff}*{mono}"
            if parts and not body.startswith("-"):
                parts.append("+ " + body)
            elif parts:
                parts.append("- " + body[1:])
            else:
                parts.append(body)
        return " ".join(parts)

    # ------------------------------------------------------------------
    # arithmetic

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(self.vars, other)

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        a, b = align(self, other)
        out = dict(a.terms)
        for expo, coeff in b.terms.items():
            s = out.get(expo, Fraction(0)) + coeff
            if s:
                out[expo] = s
            else:
                out.pop(expo, None)
        return _raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return _raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return MPoly.zero(self.vars)
            return _raw(self.vars, {e: k * c for e, k in self.terms.items()})
        a, b = align(self, self._coerce(other))
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return _raw(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise PolyError("negative polynomial power")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def scale(self, c: Scalar) -> "MPoly":
        return self * _as_fraction(c)

    # ------------------------------------------------------------------
    # degree and order queries

    def total_degree(self):
        if not self.terms:
            return INFINITE  # degree of 0 is treated as undefined-high by callers
        return max(sum(e) for e in self.terms)

    def order_at_origin(self):
        """Minimal total degree of a stored term; INFINITE for the zero polynomial."""
        if not self.terms:
            return INFINITE
        return min(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def order_in_var(self, name: str):
        """Vanishing order at 0 along the ``name`` axis (all other variables set to 0)."""
        i = self._index(name)
        best = None
        for expo in self.terms:
            if all(e == 0 for j, e in enumerate(expo) if j != i):
                if best is None or expo[i] < best:
                    best = expo[i]
        return INFINITE if best is None else best

    def lowest_form(self) -> "MPoly":
        """Sum of the terms of minimal total degree (the tangent-cone form)."""
        if not self.terms:
            raise PolyError("lowest_form of the zero polynomial")
        m = min(sum(e) for e in self.terms)
        return _raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == m})

    def truncate_total(self, bound: int, weights: Mapping[str, int] | None = None) -> "MPoly":
        """Drop terms of total degree >= ``bound`` (optionally weighting some variables 0)."""
        if weights is None:
            keep = {e: c for e, c in self.terms.items() if sum(e) < bound}
        else:
            w = [weights.get(v, 1) for v in self.vars]
            keep = {
                e: c
                for e, c in self.terms.items()
                if sum(wi * ei for wi, ei in zip(w, e)) < bound
            }
        return _raw(self.vars, keep)

    def _index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise PolyError(f"unknown variable {name!r} (have {self.vars})") from None

    # ------------------------------------------------------------------
    # calculus and substitution

    def derivative(self, name: str) -> "MPoly":
        i = self._index(name)
        out: dict[Exponent, Fraction] = {}
        for expo, coeff in self.terms.items():
            e = expo[i]
            if e == 0:
                continue
            key = expo[:i] + (e - 1,) + expo[i + 1:]
            out[key] = out.get(key, Fraction(0)) + coeff * e
        return _raw(self.vars, {k: v for k, v in out.items() if v})

    def compose(self, assignment: Mapping[str, "MPoly"]) -> "MPoly":
        """Substitute polynomials for variables (ring homomorphism).

        Unassigned variables map to themselves in the union variable set.
        """
        target_vars: list[str] = []
        images: dict[str, MPoly] = {}
        for v in self.vars:
            img = assignment.get(v)
            if img is None:
                if v not in target_vars:
                    target_vars.append(v)
            else:
                for w in img.vars:
                    if w not in target_vars:
                        target_vars.append(w)
        for v in self.vars:
            img = assignment.get(v)
            if img is None:
                images[v] = MPoly.var(target_vars, v)
            else:
                images[v] = img.extend(target_vars)
        # power cache avoids recomputing high powers of shared linear forms
        powers: dict[tuple[str, int], MPoly] = {}

        def power(v: str, n: int) -> MPoly:
            key = (v, n)
            if key not in powers:
                if n == 0:
                    powers[key] = MPoly.const(target_vars, 1)
                elif n == 1:
                    powers[key] = images[v]
                else:
                    powers[key] = power(v, n - 1) * images[v]
            return powers[key]

        total = MPoly.zero(target_vars)
        for expo, coeff in self.terms.items():
            term = MPoly.const(target_vars, coeff)
            for v, e in zip(self.vars, expo):
                if e:
                    term = term * power(v, e)
            total = total + term
        return total

    def substitute_values(self, point: Mapping[str, Scalar]) -> "MPoly":
        """Evaluate some variables at exact rational values; the rest remain."""
        assignment = {}
        for v, val in point.items():
            self._index(v)
            assignment[v] = MPoly.const([v], _as_fraction(val)).extend(self.vars)
        return self.compose(assignment)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise PolyError(f"evaluation point misses variables {missing}")
        total = Fraction(0)
        vals = [_as_fraction(point[v]) for v in self.vars]
        for expo, coeff in self.terms.items():
            term = coeff
            for val, e in zip(vals, expo):
                if e:
                    term *= val ** e
            total += term
        return total

    def extend(self, variables: Sequence[str]) -> "MPoly":
        """Re-embed into a larger (or reordered) variable tuple."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        positions = []
        for v in self.vars:
            if v not in variables:
                raise PolyError(f"cannot drop variable {v!r}")
            positions.append(variables.index(v))
        n = len(variables)
        out = {}
        for expo, coeff in self.terms.items():
            key = [0] * n
            for pos, e in zip(positions, expo):
                key[pos] = e
            out[tuple(key)] = coeff
        return _raw(variables, out)

    def drop_unused(self, keep: Sequence[str] | None = None) -> "MPoly":
        """Project onto the variables actually present (plus any in ``keep``)."""
        used = set(keep or ())
        for expo in self.terms:
            for v, e in zip(self.vars, expo):
                if e:
                    used.add(v)
        new_vars = tuple(v for v in self.vars if v in used)
        idx = [self.vars.index(v) for v in new_vars]
        out = {tuple(e[i] for i in idx): c for e, c in self.terms.items()}
        return _raw(new_vars, out)

    # ------------------------------------------------------------------
    # univariate views (used by resultants, Hensel lifting, division)

    def as_univariate(self, name: str) -> list["MPoly"]:
        """Coefficient list in ``name``: index k holds the coefficient of name**k."""
        i = self._index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        d = self.degree_in(name)
        coeffs = [dict() for _ in range(d + 1)] if d >= 0 else []
        for expo, coeff in self.terms.items():
            key = expo[:i] + expo[i + 1:]
            coeffs[expo[i]][key] = coeff
        return [_raw(rest, c) for c in coeffs]

    @classmethod
    def from_univariate(cls, coeffs: Sequence["MPoly"], name: str) -> "MPoly":
        if not coeffs:
            raise PolyError("empty coefficient list")
        base_vars = coeffs[0].vars
        if name in base_vars:
            i = base_vars.index(name)
            out: dict[Exponent, Fraction] = {}
            for k, c in enumerate(coeffs):
                c = c.extend(base_vars)
                for expo, coeff in c.terms.items():
                    key = expo[:i] + (expo[i] + k,) + expo[i + 1:]
                    s = out.get(key, Fraction(0)) + coeff
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
            return _raw(base_vars, out)
        variables = base_vars + (name,)
        out2: dict[Exponent, Fraction] = {}
        for k, c in enumerate(coeffs):
            c = c.extend(base_vars)
            for expo, coeff in c.terms.items():
                out2[expo + (k,)] = coeff
        return _raw(variables, out2)

    # ------------------------------------------------------------------
    # exact division and normalization

    def leading_deglex(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise PolyError("leading term of zero")
        e = max(self.terms, key=deglex_key)
        return e, self.terms[e]

    def monic_deglex(self) -> "MPoly":
        """Scale so the deglex-leading coefficient is 1 (canonical gcd output)."""
        if not self.terms:
            return self
        _, c = self.leading_deglex()
        return self * (1 / c)

    def exact_div(self, divisor: "MPoly") -> "MPoly":
        """Exact polynomial division; raises PolyError if not divisible."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise PolyError("division by zero polynomial")
        a, b = align(self, divisor)
        if a.is_zero():
            return a
        if b.is_constant():
            return a * (1 / b.constant_term())
        lead_b, cb = b.leading_deglex()
        rem = dict(a.terms)
        out: dict[Exponent, Fraction] = {}
        while rem:
            e = max(rem, key=deglex_key)
            c = rem[e]
            q = tuple(x - y for x, y in zip(e, lead_b))
            if any(v < 0 for v in q):
                raise PolyError("not exactly divisible")
            qc = c / cb
            out[q] = qc
            for eb, coeff_b in b.terms.items():
                key = tuple(x + y for x, y in zip(q, eb))
                s = rem.get(key, Fraction(0)) - qc * coeff_b
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return _raw(a.vars, out)

    def divides(self, other: "MPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except PolyError:
            return False

    def monomial_content(self) -> Exponent:
        """Componentwise min of exponents (the largest monomial dividing self)."""
        if not self.terms:
            raise PolyError("monomial content of zero")
        it = iter(self.terms)
        mins = list(next(it))
        for expo in it:
            for i, e in enumerate(expo):
                if e < mins[i]:
                    mins[i] = e
        return tuple(mins)

    def div_monomial(self, expo: Exponent) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            key = tuple(x - y for x, y in zip(e, expo))
            if any(v < 0 for v in key):
                raise PolyError("monomial does not divide")
            out[key] = c
        return _raw(self.vars, out)


def _raw(variables: tuple[str, ...], terms: dict[Exponent, Fraction]) -> MPoly:
    """Internal constructor bypassing validation (terms assumed canonical)."""
    p = MPoly.__new__(MPoly)
    p.vars = variables
    p.terms = terms
    return p


def mul_trunc(a: MPoly, b: MPoly, bound: int) -> MPoly:
    """Product with every term of total degree >= bound discarded early.

    Skips coefficient pairs whose degree sum already exceeds the bound,
    which is the bulk of the work in truncated-series arithmetic.
    """
    import bisect

    a, b = align(a, b)
    if not a.terms or not b.terms:
        return MPoly.zero(a.vars)
    items = sorted(b.terms.items(), key=lambda kv: sum(kv[0]))
    degs = [sum(e) for e, _ in items]
    out: dict[Exponent, Fraction] = {}
    for ea, ca in a.terms.items():
        limit = bound - sum(ea)
        if limit <= 0:
            continue
        hi = bisect.bisect_left(degs, limit)
        for eb, cb in items[:hi]:
            key = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(key, Fraction(0)) + ca * cb
            if s:
                out[key] = s
            else:
                del out[key]
    return _raw(a.vars, out)


def align(a: MPoly, b: MPoly) -> tuple[MPoly, MPoly]:
    """Bring two polynomials over a common variable tuple.

    The union order is: a's variables first, then b's new ones, preserving
    first-seen order so results are deterministic.
    """
    if a.vars == b.vars:
        return a, b
    union = list(a.vars)
    for v in b.vars:
        if v not in union:
            union.append(v)
    union_t = tuple(union)
    return a.extend(union_t), b.extend(union_t)


def poly_sum(polys: Iterable[MPoly], variables: Sequence[str]) -> MPoly:
    total = MPoly.zero(variables)
    for p in polys:
        total = total + p
    return total


def arith(p: MPoly, q: MPoly, op: str) -> MPoly:
    """Dispatch add/sub/mul by name (thin convenience wrapper)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise PolyError(f"unknown operation {op!r}")


def substitute_linear(
    p: MPoly,
    matrix: Sequence[Sequence[Scalar]],
    geometric_vars: Sequence[str],
    check_invertible: bool = True,
) -> MPoly:
    """Compose ``p`` with the linear change  old_i = sum_j M[i][j] * new_j.

    The matrix acts on ``geometric_vars`` only; any other variables (family
    parameters) pass through unchanged.  Total degree is preserved.
    """
    geometric_vars = tuple(geometric_vars)
    n = len(geometric_vars)
    rows = [[_as_fraction(x) for x in row] for row in matrix]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise PolyError("matrix shape does not match geometric variables")
    if check_invertible and _det(rows) == 0:
        raise SingularMatrixError("coordinate change matrix is singular")
    assignment = {}
    for i, v in enumerate(geometric_vars):
        form = MPoly([*geometric_vars], {})
        for j, w in enumerate(geometric_vars):
            if rows[i][j]:
                form = form + MPoly.var(geometric_vars, w) * rows[i][j]
        assignment[v] = form
    return p.compose(assignment)


def matrix_inverse(matrix: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    rows = [[_as_fraction(x) for x in row] for row in matrix]
    n = len(rows)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _det(rows: list[list[Fraction]]) -> Fraction:
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
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


OrderResult = Union[int, _InfiniteOrder]
