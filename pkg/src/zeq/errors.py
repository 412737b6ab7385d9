"""Exceptions and sentinel values shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class ZeqError(Exception):
    """Base class for all package errors."""


class PolyError(ZeqError):
    """Malformed polynomial operation (unknown variable, zero input, ...)."""


class SingularMatrixError(ZeqError):
    """A coordinate change matrix is not invertible."""


class NotRegularError(ZeqError):
    """The germ restricted to the distinguished axis vanishes identically."""

    def __init__(self, var: str, message: str | None = None):
        self.var = var
        super().__init__(message or f"germ is not regular in {var!r}")


class PrecisionExhaustedError(ZeqError):
    """A truncation order query could not be decided within the budget.

    ``quantity`` names the undecided quantity, ``precision`` is the largest
    truncation order that was tried.
    """

    def __init__(self, quantity: str, precision: int):
        self.quantity = quantity
        self.precision = precision
        super().__init__(f"precision {precision} exhausted while deciding {quantity}")


class TrialsExhaustedError(ZeqError):
    """The coordinate search ran out of trials.

    ``stats`` maps condition names to the number of trials they rejected.
    """

    def __init__(self, trials: int, stats: dict[str, int]):
        self.trials = trials
        self.stats = dict(stats)
        super().__init__(f"no admissible coordinate change in {trials} trials ({stats})")


class ParseError(ZeqError):
    """Expression syntax error; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


@dataclass(frozen=True)
class ZeroToPrecision:
    """Marker: a truncated series has no visible term below ``precision``.

    The underlying germ may still be nonzero; only terms of total degree
    >= ``precision`` are unknown.
    """

    precision: int

    def __repr__(self) -> str:
        return f"ZeroToPrecision({self.precision})"


class _InfiniteOrder:
    """Order of the zero restriction; compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"

    def __eq__(self, other) -> bool:
        return isinstance(other, _InfiniteOrder)

    def __hash__(self) -> int:
        return hash("_InfiniteOrder")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return isinstance(other, _InfiniteOrder)

    def __gt__(self, other) -> bool:
        return not isinstance(other, _InfiniteOrder)

    def __ge__(self, other) -> bool:
        return True


INFINITE = _InfiniteOrder()
