"""Brute-force model of the odd cohomology of ``C x C x C x W``.

Each factor carries odd classes ``delta_1 .. delta_2h`` from a symplectic
basis of ``H^1``.  On a curve factor ``delta_a * delta_(h+a)`` is the point
class and every other product of two odd classes vanishes; on ``W`` the odd
classes are kept as a free exterior algebra with
``theta = sum_a delta_a * delta_(h+a)``.

The model knows nothing about the rewrite rules of :mod:`netclass.ring`; it is
used to check them.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError, VerificationError
from .ring import RingElement, RingPresentation, curve_product_presentation

# key: (eta flags for factors 1..3, sorted tuple of odd classes (factor, index))
Key = tuple[tuple[int, int, int], tuple[tuple[int, int], ...]]


class OddClassModel:
    def __init__(self, h: int):
        if h < 1:
            raise InputError("genus must be >= 1")
        self.h = h

    # -- elements are plain dicts Key -> Fraction ----------------------------

    def _normalize(self, eta, odds, coeff):
        odds = list(odds)
        sign = 1
        # bubble sort keeps track of the Koszul sign
        for i in range(len(odds)):
            for j in range(len(odds) - 1 - i):
                if odds[j] == odds[j + 1]:
                    return None
                if odds[j] > odds[j + 1]:
                    odds[j], odds[j + 1] = odds[j + 1], odds[j]
                    sign = -sign
        if any(odds[j] == odds[j + 1] for j in range(len(odds) - 1)):
            return None
        eta = list(eta)
        paired = set()
        for f in (1, 2, 3):
            block = [o for o in odds if o[0] == f]
            if not block:
                continue
            if eta[f - 1] or len(block) > 2:
                return None
            if len(block) == 2:
                # contiguous even block: replacing it by eta_f costs no sign
                (_, a), (_, b) = block
                if b != a + self.h:
                    return None
                eta[f - 1] = 1
                paired.update(block)
        rest = tuple(o for o in odds if o not in paired)
        return (tuple(eta), rest), sign * coeff

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (e1, o1), c1 in x.items():
            for (e2, o2), c2 in y.items():
                if any(a and b for a, b in zip(e1, e2)):
                    continue
                eta = tuple(a | b for a, b in zip(e1, e2))
                res = self._normalize(eta, o1 + o2, c1 * c2)
                if res is None:
                    continue
                key, c = res
                out[key] = out.get(key, 0) + c
        return {k: v for k, v in out.items() if v}

    @staticmethod
    def add(*xs: dict) -> dict:
        out: dict = {}
        for x in xs:
            for k, v in x.items():
                out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v}

    @staticmethod
    def scale(q, x: dict) -> dict:
        return {k: q * v for k, v in x.items() if q * v}

    def one(self) -> dict:
        return {((0, 0, 0), ()): Fraction(1)}

    def delta(self, factor: int, index: int) -> dict:
        return {((0, 0, 0), ((factor, index),)): Fraction(1)}

    def eta(self, factor: int) -> dict:
        flags = [0, 0, 0]
        flags[factor - 1] = 1
        return {(tuple(flags), ()): Fraction(1)}

    def theta(self) -> dict:
        h = self.h
        return self.add(*(self.mul(self.delta(4, a), self.delta(4, h + a)) for a in range(1, h + 1)))

    def gamma(self, i: int, j: int) -> dict:
        h = self.h
        terms = []
        for a in range(1, h + 1):
            terms.append(self.mul(self.delta(j, a), self.delta(i, h + a)))
            terms.append(self.scale(-1, self.mul(self.delta(j, h + a), self.delta(i, a))))
        return self.scale(-1, self.add(*terms))

    def generator(self, name: str) -> dict:
        if name.startswith("eta"):
            return self.eta(int(name[3:]))
        if name.startswith("gamma"):
            return self.gamma(int(name[5]), int(name[6]))
        if name == "theta":
            return self.theta()
        raise InputError(f"generator {name!r} has no odd-class model")

    def realize_monomial(self, mono) -> dict:
        out = self.one()
        for name, e in mono:
            g = self.generator(name)
            for _ in range(e):
                out = self.mul(out, g)
        return out

    def realize(self, x: RingElement) -> dict:
        return self.add(*(self.scale(c, self.realize_monomial(m)) for m, c in x.terms.items()))


def oracle_failures(h: int, pres: RingPresentation | None = None) -> list[str]:
    """Rules of ``pres`` (default: genus ``h`` curves) that the model refutes.

    Checks every rewrite rule directly, then every pairwise product of
    ``eta`` and ``gamma`` generators against its normal form.
    """
    pres = pres or curve_product_presentation(h)
    model = OddClassModel(h)
    failures = []
    for rule in pres.rules:
        lhs = model.realize_monomial(rule.lhs)
        rhs = model.add(*(model.scale(c, model.realize_monomial(m)) for m, c in rule.rhs))
        if lhs != rhs:
            failures.append(str(rule))
    names = [n for n in pres.names if n.startswith(("eta", "gamma"))]
    for i, a in enumerate(names):
        for b in names[i:]:
            product = pres.gen(a) * pres.gen(b)
            direct = model.mul(model.generator(a), model.generator(b))
            if model.realize(product) != direct:
                failures.append(f"{a}*{b} -> {product}")
    return failures


def delta_oracle_check(h: int) -> bool:
    """True if every rewrite rule for genus ``h`` agrees with the odd-class model."""
    failures = oracle_failures(h)
    if failures:
        raise VerificationError("rewrite rules refuted by odd-class model: " + "; ".join(failures))
    return True
