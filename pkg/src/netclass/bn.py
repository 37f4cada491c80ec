"""Brill-Noether counts for linear series on general (pointed) curves.

All quantities are exact: factorials are big integers and ratios are
``Fraction`` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .errors import InputError


def _check_ramification(alpha: Sequence[int], r: int | None = None, d: int | None = None):
    alpha = tuple(alpha)
    if r is not None and len(alpha) != r + 1:
        raise InputError(f"ramification sequence {alpha} must have length r+1 = {r + 1}")
    if any(a < 0 for a in alpha) or any(x > y for x, y in zip(alpha, alpha[1:])):
        raise InputError(f"ramification sequence {alpha} must be non-negative and non-decreasing")
    if d is not None and r is not None and alpha and alpha[-1] > d - r:
        raise InputError(f"ramification sequence {alpha} exceeds d - r = {d - r}")
    return alpha


def weight(alpha: Sequence[int]) -> int:
    return sum(alpha)


@dataclass(frozen=True)
class BNProblem:
    """A ``g^r_d`` on a genus ``g`` curve with ramification at marked points."""

    g: int
    r: int
    d: int
    marked: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if min(self.g, self.r, self.d) < 0:
            raise InputError("g, r, d must be non-negative")
        marked = tuple(_check_ramification(a, self.r) for a in self.marked)
        object.__setattr__(self, "marked", marked)

    @property
    def rho(self) -> int:
        return rho(self.g, self.r, self.d, *self.marked)


def rho(g: int, r: int, d: int, *marked: Sequence[int]) -> int:
    """Adjusted Brill-Noether number; may be negative."""
    return g - (r + 1) * (g - d + r) - sum(weight(a) for a in marked)


def castelnuovo(g: int, r: int, d: int) -> Fraction:
    """Number of ``g^r_d`` on a general curve when rho = 0.

    Returns 0 if some factorial argument ``g - d + r + i`` is negative.
    """
    if any(g - d + r + i < 0 for i in range(r + 1)):
        return Fraction(0)
    num = factorial(g) * prod(factorial(i) for i in range(r + 1))
    den = prod(factorial(g - d + r + i) for i in range(r + 1))
    return Fraction(num, den)


def count_ramified(g: int, r: int, d: int, alpha: Sequence[int]) -> Fraction:
    """Number of ``g^r_d`` with ramification ``alpha`` at a general point.

    The formula is evaluated as written; it is meaningful when the adjusted
    Brill-Noether number vanishes.
    """
    alpha = _check_ramification(alpha, r, d)
    if alpha[0] + g - d + r < 0:
        return Fraction(0)
    num = factorial(g) * prod(
        alpha[j] - alpha[i] + j - i for i in range(r + 1) for j in range(i + 1, r + 1)
    )
    den = prod(factorial(g - d + r + alpha[i] + i) for i in range(r + 1))
    return Fraction(num, den)


def plucker_double_points(g: int, d: int) -> int:
    """Double points of a degree ``d`` plane model of a genus ``g`` curve."""
    if d < 2:
        raise InputError("plane model needs d >= 2")
    return (d - 1) * (d - 2) // 2 - g


def vanishing_from_ramification(alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = _check_ramification(alpha)
    return tuple(a + i for i, a in enumerate(alpha))


def ramification_from_vanishing(a: Sequence[int], d: int | None = None) -> tuple[int, ...]:
    a = tuple(a)
    if any(x >= y for x, y in zip(a, a[1:])) or (a and a[0] < 0):
        raise InputError(f"vanishing sequence {a} must be strictly increasing and >= 0")
    if d is not None and a and a[-1] > d:
        raise InputError(f"vanishing sequence {a} exceeds d = {d}")
    return tuple(x - i for i, x in enumerate(a))


def limit_compatible(left: Sequence[int], right: Sequence[int], d: int) -> bool:
    """Compatibility of two aspects' vanishing sequences at a node."""
    if len(left) != len(right):
        raise InputError("vanishing sequences must have equal length")
    r = len(left) - 1
    return all(left[i] + right[r - i] >= d for i in range(r + 1))
