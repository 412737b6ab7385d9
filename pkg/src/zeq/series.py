"""Truncated multivariate power series.

A ``TruncSeries`` is a polynomial body plus a precision ``N``: terms of
total degree >= N are unknown, not zero.  The filtration is by total
degree over the full variable tuple of the body (geometric variables and
family parameters together), so a single precision governs every germ
query.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import INFINITE, PolyError, ZeroToPrecision
from .mpoly import MPoly, Scalar, mul_trunc


class TruncSeries:
    """Power-series germ known modulo total degree ``precision``."""

    __slots__ = ("body", "precision")

    def __init__(self, body: MPoly, precision: int):
        if precision < 1:
            raise PolyError("series precision must be >= 1")
        self.body = body.truncate_total(precision)
        self.precision = precision

    @classmethod
    def from_poly(cls, p: MPoly, precision: int) -> "TruncSeries":
        return cls(p, precision)

    @classmethod
    def zero(cls, variables: Sequence[str], precision: int) -> "TruncSeries":
        return cls(MPoly.zero(variables), precision)

    @classmethod
    def const(cls, variables: Sequence[str], value: Scalar, precision: int) -> "TruncSeries":
        return cls(MPoly.const(variables, value), precision)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.body.vars

    def is_zero_to_precision(self) -> bool:
        return self.body.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.precision == other.precision and self.body == other.body

    def __hash__(self):
        return hash((self.body, self.precision))

    def __repr__(self) -> str:
        return f"TruncSeries({self.body}, N={self.precision})"

    # ------------------------------------------------------------------

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, MPoly):
            return TruncSeries(other, self.precision)
        return TruncSeries(MPoly.const(self.vars, other), self.precision)

    def __add__(self, other) -> "TruncSeries":
        other = self._coerce(other)
        n = min(self.precision, other.precision)
        return TruncSeries(self.body + other.body, n)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(-self.body, self.precision)

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return TruncSeries(self.body * other, self.precision)
        other = self._coerce(other)
        # sharp rule: unknown(a)*known(b) lives above Na + ord(b), etc.
        orda = self.body.order_at_origin()
        ordb = other.body.order_at_origin()
        na = self.precision + (ordb if ordb is not INFINITE else other.precision)
        nb = other.precision + (orda if orda is not INFINITE else self.precision)
        n = min(na, nb, self.precision + other.precision)
        return TruncSeries(mul_trunc(self.body, other.body, n), n)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncSeries":
        result = TruncSeries.const(self.vars, 1, self.precision)
        for _ in range(n):
            result = result * self
        return result

    # ------------------------------------------------------------------

    def order_at_origin(self) -> Union[int, ZeroToPrecision]:
        if self.body.is_zero():
            return ZeroToPrecision(self.precision)
        return self.body.order_at_origin()

    def order_in_var(self, name: str) -> Union[int, ZeroToPrecision]:
        o = self.body.order_in_var(name)
        if o is INFINITE:
            return ZeroToPrecision(self.precision)
        return o

    def constant_term(self) -> Fraction:
        return self.body.constant_term()

    def truncate(self, precision: int) -> "TruncSeries":
        if precision > self.precision:
            raise PolyError("cannot raise precision of a truncated series")
        return TruncSeries(self.body, precision)

    def extend_vars(self, variables: Sequence[str]) -> "TruncSeries":
        return TruncSeries(self.body.extend(variables), self.precision)

    def substitute_values(self, point: Mapping[str, Scalar]) -> "TruncSeries":
        # only exact specialization at 0 keeps the filtration honest
        if any(v != 0 for v in point.values()):
            raise PolyError("series specialization is only valid at 0")
        return TruncSeries(self.body.substitute_values(point), self.precision)

    def invert_unit(self) -> "TruncSeries":
        """Multiplicative inverse of a unit series, to the same precision."""
        c0 = self.body.constant_term()
        if c0 == 0:
            raise PolyError("series is not a unit (constant term 0)")
        n = self.precision
        inv = MPoly.const(self.vars, Fraction(1) / c0)
        known = 1
        while known < n:
            known = min(2 * known, n)
            # Newton step: inv <- inv * (2 - body * inv), exact mod degree `known`
            prod = mul_trunc(self.body, inv, known)
            two_minus = MPoly.const(self.vars, 2) - prod
            inv = mul_trunc(inv, two_minus, known)
        return TruncSeries(inv, n)


def series_arith(a: TruncSeries, b: TruncSeries, op: str) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise PolyError(f"unknown operation {op!r}")


def series_invert_unit(s: TruncSeries) -> TruncSeries:
    return s.invert_unit()
