"""Chern classes, Chern characters and Porteous-type combinations.

Everything here is written against a small arithmetic surface (``+``, ``-``,
``*`` and division by integers), so it works both for ``RingElement`` values
and for sympy expressions used in the universal-curve computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any

from .errors import InputError
from .ring import RingElement

CHARACTER = "character"
TOTAL_CHERN = "total-chern"


@dataclass(frozen=True)
class ChernData:
    """Degree-indexed classes of a virtual bundle of given rank.

    ``parts[j]`` is the degree ``j`` piece, ``parts[0]`` included: it is the
    rank for a character and ``1`` for a total Chern class.
    """

    rank: int
    parts: tuple[Any, ...]
    kind: str

    def __post_init__(self):
        if self.kind not in (CHARACTER, TOTAL_CHERN):
            raise InputError(f"unknown kind {self.kind!r}")
        for j, x in enumerate(self.parts):
            if isinstance(x, RingElement) and not x.is_homogeneous(j):
                raise InputError(f"part {j} is not homogeneous of degree {j}")
        if self.parts and isinstance(self.parts[0], RingElement):
            expected = self.rank if self.kind == CHARACTER else 1
            if self.parts[0] != expected:
                raise InputError(f"degree 0 part must be {expected}")

    @property
    def top(self) -> int:
        return len(self.parts) - 1

    def __getitem__(self, j: int):
        if j < len(self.parts):
            return self.parts[j]
        return self.parts[0] * 0

    @classmethod
    def from_element(cls, x: RingElement, rank: int, kind: str = CHARACTER, up_to: int | None = None):
        """Split a mixed-degree ring element into its homogeneous parts."""
        if up_to is None:
            up_to = max(x.degrees() | {0})
        return cls(rank, tuple(x.part(j) for j in range(up_to + 1)), kind)

    def total(self):
        """Sum of all parts."""
        out = self.parts[0]
        for x in self.parts[1:]:
            out = out + x
        return out


def _require(cd: ChernData, kind: str):
    if cd.kind != kind:
        raise InputError(f"expected {kind} data, got {cd.kind}")


def _divide(x, k: int):
    if isinstance(x, RingElement):
        return x / k
    return x * Fraction(1, k) if isinstance(x, (int, Fraction)) else x / k


def character_to_chern(cd: ChernData, up_to: int = 3) -> ChernData:
    """Newton's identities with power sums ``p_k = k! ch_k``."""
    _require(cd, CHARACTER)
    if up_to > cd.top:
        raise InputError(f"character known up to degree {cd.top}, asked for {up_to}")
    one = cd.parts[0] * 0 + 1
    p = [None] + [cd[k] * factorial(k) for k in range(1, up_to + 1)]
    c = [one]
    for k in range(1, up_to + 1):
        acc = cd.parts[0] * 0
        for i in range(1, k + 1):
            term = c[k - i] * p[i]
            acc = acc + term if i % 2 else acc - term
        c.append(_divide(acc, k))
    return ChernData(cd.rank, tuple(c), TOTAL_CHERN)


def chern_to_character(cd: ChernData, rank: int | None = None, up_to: int = 3) -> ChernData:
    """Inverse of :func:`character_to_chern`."""
    _require(cd, TOTAL_CHERN)
    rank = cd.rank if rank is None else rank
    zero = cd.parts[0] * 0
    p = [None]
    for k in range(1, up_to + 1):
        # p_k = (-1)^(k-1) k c_k + sum_{i<k} (-1)^(k-1+i) c_{k-i} p_i
        acc = cd[k] * k if k % 2 else -(cd[k] * k)
        for i in range(1, k):
            term = cd[k - i] * p[i]
            acc = acc + term if (k - 1 + i) % 2 == 0 else acc - term
        p.append(acc)
    ch = [zero + rank] + [_divide(p[k], factorial(k)) for k in range(1, up_to + 1)]
    return ChernData(rank, tuple(ch), CHARACTER)


def porteous_codim2_quotient(cV: ChernData, cM: ChernData):
    """Degree 2 part of ``c(V^dual) / c(M^dual)``.

    ``c2(V^) + c1(V^) c1(M) + c1(M)^2 - c2(M)`` with ``ci(V^) = (-1)^i ci(V)``.
    """
    _require(cV, TOTAL_CHERN)
    _require(cM, TOTAL_CHERN)
    c1v, c2v = -cV[1], cV[2]
    c1m, c2m = cM[1], cM[2]
    return c2v + c1v * c1m + c1m * c1m - c2m


def porteous_e_classes(fc: ChernData, cM: ChernData):
    """``e1, e2, e3`` for the Porteous determinant on ``C x C x W``.

    The combinations are fixed; ``fc`` holds the classes ``c1, c2, c3`` of the
    bundle pulled back from ``W``.
    """
    _require(fc, TOTAL_CHERN)
    _require(cM, TOTAL_CHERN)
    f1, f2, f3 = fc[1], fc[2], fc[3]
    m1, m2, m3 = cM[1], cM[2], cM[3]
    m1sq = m1 * m1
    e1 = f1 + m1
    e2 = f2 + f1 * m1 + m1sq - m2
    e3 = f3 + f2 * m1 + f1 * (m1sq - m2) + (m1sq * m1 + m3 - 2 * (m1 * m2))
    return e1, e2, e3


def porteous_det_2x2(e1, e2, e3):
    """Determinant of ``[[e2, e3], [e1, e2]]``."""
    for k, e in ((1, e1), (2, e2), (3, e3)):
        if isinstance(e, RingElement) and not e.is_homogeneous(k):
            raise InputError(f"e{k} must be homogeneous of degree {k}")
    return e2 * e2 - e1 * e3


def line_bundle_character(x, up_to: int = 3) -> ChernData:
    """Character ``exp(x)`` of a line bundle with first Chern class ``x``."""
    one = x * 0 + 1
    parts = [one]
    power = one
    for k in range(1, up_to + 1):
        power = power * x
        parts.append(_divide(power, factorial(k)))
    return ChernData(1, tuple(parts), CHARACTER)


def add_characters(a: ChernData, b: ChernData) -> ChernData:
    _require(a, CHARACTER)
    _require(b, CHARACTER)
    n = max(a.top, b.top)
    return ChernData(a.rank + b.rank, tuple(a[j] + b[j] for j in range(n + 1)), CHARACTER)


def multiply_total(a: ChernData, b: ChernData, up_to: int) -> ChernData:
    """Whitney product of two total Chern classes, truncated."""
    _require(a, TOTAL_CHERN)
    _require(b, TOTAL_CHERN)
    parts = []
    for k in range(up_to + 1):
        acc = a.parts[0] * 0
        for i in range(k + 1):
            acc = acc + a[i] * b[k - i]
        parts.append(acc)
    return ChernData(a.rank + b.rank, tuple(parts), TOTAL_CHERN)
