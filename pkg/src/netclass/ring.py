"""Graded-commutative rings given by generators, rewrite rules and degree caps.

Elements are sparse maps from monomials to exact rationals.  A monomial is
stored internally as a tuple of exponents, one slot per generator, in the
presentation's fixed generator order.  Every element handed out by this
module is in normal form: no term has a zero coefficient, no monomial
contains the left-hand side of a rule, and no monomial exceeds a degree cap.

The main presentation is the cohomology of ``C x C x C x W`` where ``C`` is a
curve of genus ``h`` and ``W`` is a surface (the variety ``W^2_d(C)``):

    eta_i      point class of the i-th curve factor (i = 1, 2, 3)
    gamma_ij   mixed class coupling factors i < j (j = 4 is the W factor)
    theta      theta class pulled back from W
    c1, c2, c3 Chern classes of the rank 3 bundle on W
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Union

from .bn import castelnuovo
from .errors import InputError, RewriteError

Rational = Union[int, Fraction]

CURVE_FACTORS = ("C1", "C2", "C3")
W_FACTOR = "W"

# Rewriting a monomial never needs more than a handful of steps for the
# presentations built here; the guard only catches ill-formed rule sets.
MAX_REWRITE_STEPS = 100_000


@dataclass(frozen=True)
class Generator:
    """A named even generator.

    ``factors`` lists the product factors the class lives on; the complex
    degree is split evenly between them (``gamma14`` has degree 1/2 on ``C1``
    and 1/2 on ``W``).
    """

    name: str
    degree: int
    factors: tuple[str, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise InputError(f"generator {self.name!r} must have degree >= 1")
        if not self.factors:
            raise InputError(f"generator {self.name!r} has no factor")

    @property
    def factor_tag(self) -> str:
        return self.factors[0] if len(self.factors) == 1 else "mixed"

    def weight(self, factor: str) -> Fraction:
        if factor not in self.factors:
            return Fraction(0)
        return Fraction(self.degree, len(self.factors))


# A monomial in named form: ((name, exponent), ...) sorted by generator order.
Monomial = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class RewriteRule:
    lhs: Monomial
    rhs: tuple[tuple[Monomial, Fraction], ...]

    def __str__(self):
        rhs = " + ".join(f"{_fmt_q(c)}*{_fmt_mono(m)}" for m, c in self.rhs) or "0"
        return f"{_fmt_mono(self.lhs)} -> {rhs}"


def _family_rank(name: str) -> int:
    for rank, prefix in enumerate(("eta", "gamma", "theta", "c")):
        if name.startswith(prefix):
            return rank
    return 4


def generator_sort_key(name: str):
    return (_family_rank(name), name)


class RingPresentation:
    """Generators, rewrite rules, per-factor degree caps and a top degree.

    Instances are immutable after construction.
    """

    def __init__(
        self,
        generators: Iterable[Generator],
        rules: Iterable[tuple[Monomial, Iterable[tuple[Monomial, Rational]]]],
        degree_caps: Mapping[str, int],
        top_degree: int,
        label: str = "",
    ):
        gens = sorted(generators, key=lambda g: generator_sort_key(g.name))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise InputError("generator names must be unique")
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.names: tuple[str, ...] = tuple(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.degrees = tuple(g.degree for g in gens)
        self.degree_caps = dict(degree_caps)
        self.top_degree = top_degree
        self.label = label
        self._cap_weights = {
            f: tuple(g.weight(f) for g in gens) for f in self.degree_caps
        }

        compiled = []
        self.rules: list[RewriteRule] = []
        for lhs, rhs in rules:
            lhs_exp = self._exponents(lhs)
            rhs_terms = []
            for mono, coeff in rhs:
                exp = self._exponents(mono)
                if self._degree(exp) != self._degree(lhs_exp):
                    raise InputError(
                        f"rule {_fmt_mono(lhs)}: right-hand side is not homogeneous "
                        "of the same degree"
                    )
                rhs_terms.append((exp, Fraction(coeff)))
            compiled.append((lhs_exp, tuple(rhs_terms)))
            self.rules.append(
                RewriteRule(
                    self.monomial(lhs_exp),
                    tuple((self.monomial(e), c) for e, c in rhs_terms),
                )
            )
        self._rules = tuple(compiled)

    def __repr__(self):
        return f"RingPresentation({self.label or ','.join(self.names)})"

    # -- monomial helpers -------------------------------------------------

    def _exponents(self, mono: Monomial) -> tuple[int, ...]:
        exp = [0] * len(self.names)
        for name, e in mono:
            if name not in self.index:
                raise InputError(f"unknown generator {name!r} for {self!r}")
            if e < 0:
                raise InputError("negative exponent")
            exp[self.index[name]] += e
        return tuple(exp)

    def monomial(self, exp: tuple[int, ...]) -> Monomial:
        return tuple((n, e) for n, e in zip(self.names, exp) if e)

    def _degree(self, exp) -> int:
        return sum(e * d for e, d in zip(exp, self.degrees))

    def factor_degree(self, exp, factor: str) -> Fraction:
        gens = self.generators
        return sum((e * gens[i].weight(factor) for i, e in enumerate(exp) if e), Fraction(0))

    def _killed(self, exp) -> bool:
        if self._degree(exp) > self.top_degree:
            return True
        for f, cap in self.degree_caps.items():
            w = self._cap_weights[f]
            if sum(e * wi for e, wi in zip(exp, w) if e) > cap:
                return True
        return False

    def _reduce_monomial(self, exp, coeff, out: dict, budget: list):
        work = [(exp, coeff)]
        while work:
            exp, coeff = work.pop()
            if self._killed(exp):
                continue
            for lhs, rhs in self._rules:
                if all(a >= b for a, b in zip(exp, lhs)):
                    budget[0] -= 1
                    if budget[0] < 0:
                        raise RewriteError(f"rewriting did not terminate in {self!r}")
                    rest = tuple(a - b for a, b in zip(exp, lhs))
                    for rexp, rc in rhs:
                        work.append((tuple(a + b for a, b in zip(rest, rexp)), coeff * rc))
                    break
            else:
                c = out.get(exp, 0) + coeff
                if c:
                    out[exp] = c
                else:
                    out.pop(exp, None)

    # -- element construction ---------------------------------------------

    def element(self, terms: Mapping[Monomial, Rational] | Iterable = ()) -> "RingElement":
        """Build and normalize an element from named monomials."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        raw = {}
        for mono, c in items:
            exp = self._exponents(mono)
            raw[exp] = raw.get(exp, 0) + Fraction(c)
        return self._normalize(raw)

    def _normalize(self, raw: Mapping) -> "RingElement":
        out: dict = {}
        budget = [MAX_REWRITE_STEPS]
        for exp, c in raw.items():
            if c:
                self._reduce_monomial(exp, Fraction(c), out, budget)
        return RingElement(self, out)

    def gen(self, name: str) -> "RingElement":
        return self.element({((name, 1),): 1})

    def gens(self, *names: str):
        return tuple(self.gen(n) for n in names)

    def one(self) -> "RingElement":
        return self.const(1)

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def const(self, q: Rational) -> "RingElement":
        return self.element({(): q})

    def parse(self, text: str) -> "RingElement":
        """Inverse of ``str(element)`` (canonical text form)."""
        return self.element(parse_terms(text))

    def without_factor(self, factor: str, label: str = "") -> "RingPresentation":
        """Presentation obtained by deleting every generator touching ``factor``."""
        keep = [g for g in self.generators if factor not in g.factors]
        names = {g.name for g in keep}
        rules = [
            (r.lhs, r.rhs)
            for r in self.rules
            if all(n in names for n, _ in r.lhs)
            and all(n in names for m, _ in r.rhs for n, _ in m)
        ]
        caps = {f: c for f, c in self.degree_caps.items() if f != factor}
        return RingPresentation(keep, rules, caps, self.top_degree, label)


class RingElement:
    """Immutable element of a ``RingPresentation``, always in normal form."""

    __slots__ = ("pres", "_terms")

    def __init__(self, pres: RingPresentation, terms: dict):
        self.pres = pres
        self._terms = terms

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return {self.pres.monomial(e): c for e, c in self._sorted_items()}

    def _sorted_items(self):
        # Order: degree, then lexicographic in the generator order (eta < gamma < theta < c).
        def key(item):
            exp = item[0]
            return (self.pres._degree(exp), tuple(-e for e in exp))

        return sorted(self._terms.items(), key=key)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(self.pres._exponents(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {self.pres._degree(e) for e in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def part(self, degree: int) -> "RingElement":
        return RingElement(
            self.pres, {e: c for e, c in self._terms.items() if self.pres._degree(e) == degree}
        )

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.pres.names), Fraction(0))

    # -- arithmetic -------------------------------------------------------

    def _check(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.pres is not self.pres:
                raise InputError("operands belong to different presentations")
            return other
        if isinstance(other, (int, Fraction)):
            return self.pres.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return RingElement(self.pres, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.pres, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.pres.zero()
            return RingElement(self.pres, {e: c * other for e, c in self._terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return other
        raw: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                raw[e] = raw.get(e, 0) + c1 * c2
        return self.pres._normalize(raw)

    __rmul__ = __mul__

    def __truediv__(self, q):
        if not isinstance(q, (int, Fraction)):
            return NotImplemented
        if q == 0:
            raise ZeroDivisionError("division of a ring element by zero")
        return self * (Fraction(1) / Fraction(q))

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power")
        result = self.pres.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.pres.const(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.pres is other.pres and self._terms == other._terms

    def __hash__(self):
        return hash((id(self.pres), frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(
            f"{_fmt_q(c)}*{_fmt_mono(self.pres.monomial(e))}" for e, c in self._sorted_items()
        )

    def __repr__(self):
        return f"RingElement({self})"


# -- canonical text form -----------------------------------------------------


def _fmt_q(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _fmt_mono(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(f"{n}^{e}" for n, e in mono)


_TERM = re.compile(r"^\s*(-?\d+)/(\d+)\*(.+?)\s*$")


def parse_terms(text: str) -> list[tuple[Monomial, Fraction]]:
    text = text.strip()
    if text == "0":
        return []
    out = []
    for chunk in text.split(" + "):
        m = _TERM.match(chunk)
        if not m:
            raise InputError(f"cannot parse term {chunk!r}")
        coeff = Fraction(int(m.group(1)), int(m.group(2)))
        mono_text = m.group(3)
        mono = []
        if mono_text != "1":
            for factor in mono_text.split("*"):
                name, _, e = factor.partition("^")
                mono.append((name, int(e) if e else 1))
        out.append((tuple(mono), coeff))
    return out


# -- the product-of-curves presentation ----------------------------------


def _gamma(i: int, j: int) -> str:
    return f"gamma{i}{j}"


def _factor(k: int) -> str:
    return W_FACTOR if k == 4 else f"C{k}"


def curve_product_presentation(h: int, w_cap: int = 2, top_degree: int = 4) -> RingPresentation:
    """Cohomology of ``C x C x C x W`` for a curve ``C`` of genus ``h``.

    Index 4 denotes the ``W`` factor.  Products of mixed classes sharing a
    curve index reduce; ``gamma_i4 * gamma_j4`` (i != j) is kept.
    """
    if h < 1:
        raise InputError("curve genus must be >= 1")
    gens = [Generator(f"eta{i}", 1, (f"C{i}",)) for i in (1, 2, 3)]
    pairs = [(i, j) for i in (1, 2, 3) for j in (2, 3, 4) if i < j]
    gens += [Generator(_gamma(i, j), 1, (_factor(i), _factor(j))) for i, j in pairs]
    gens += [
        Generator("theta", 1, (W_FACTOR,)),
        Generator("c1", 1, (W_FACTOR,)),
        Generator("c2", 2, (W_FACTOR,)),
        Generator("c3", 3, (W_FACTOR,)),
    ]

    def mono(*names):
        out: dict[str, int] = {}
        for n in names:
            out[n] = out.get(n, 0) + 1
        return tuple(sorted(out.items(), key=lambda t: generator_sort_key(t[0])))

    rules = []
    for i in (1, 2, 3):
        rules.append((mono(f"eta{i}", f"eta{i}"), []))
    for i, j in pairs:
        if j <= 3:
            rules.append((mono(_gamma(i, j), _gamma(i, j)), [(mono(f"eta{i}", f"eta{j}"), -2 * h)]))
        else:
            rules.append((mono(_gamma(i, j), _gamma(i, j)), [(mono(f"eta{i}", "theta"), -2)]))
        rules.append((mono(f"eta{i}", _gamma(i, j)), []))
        if j <= 3:
            rules.append((mono(f"eta{j}", _gamma(i, j)), []))
    for i in (1, 2, 3):
        for j in (2, 3, 4):
            for k in (3, 4):
                if not i < j < k:
                    continue
                # shared middle index
                rules.append(
                    (mono(_gamma(i, j), _gamma(j, k)), [(mono(f"eta{j}", _gamma(i, k)), 1)])
                )
                # shared first index
                rules.append(
                    (mono(_gamma(i, j), _gamma(i, k)), [(mono(f"eta{i}", _gamma(j, k)), 1)])
                )
                # shared last index, only when it is a curve factor
                if k <= 3:
                    rules.append(
                        (mono(_gamma(i, k), _gamma(j, k)), [(mono(f"eta{k}", _gamma(i, j)), 1)])
                    )

    caps = {f: 1 for f in CURVE_FACTORS}
    caps[W_FACTOR] = w_cap
    return RingPresentation(gens, rules, caps, top_degree, label=f"CxCxCxW(h={h})")


def standard_presentation(s: int) -> RingPresentation:
    """Ring for ``g = 3s``, ``d = 2s + 2``; the curve factors have genus ``g - 1``."""
    if not isinstance(s, int) or isinstance(s, bool) or s < 1:
        raise InputError(f"s must be a positive integer, got {s!r}")
    return curve_product_presentation(3 * s - 1)


def base_presentation(p: RingPresentation) -> RingPresentation:
    """The ``C x C x W`` ring: ``p`` with the third curve factor removed.

    Cached on ``p`` so that repeated pushforwards land in the same ring.
    """
    base = p.__dict__.get("_base")
    if base is None:
        base = p.without_factor("C3", label=p.label.replace("CxCxCxW", "CxCxW"))
        p.__dict__["_base"] = base
    return base


# -- functional surface ------------------------------------------------------


def _own(p: RingPresentation, x: RingElement) -> RingElement:
    if not isinstance(x, RingElement) or x.pres is not p:
        raise InputError("element does not belong to the given presentation")
    return x


def normal_form(p: RingPresentation, x: RingElement) -> RingElement:
    return p._normalize(_own(p, x)._terms)


def add(p: RingPresentation, x: RingElement, y: RingElement) -> RingElement:
    return _own(p, x) + _own(p, y)


def mul(p: RingPresentation, x: RingElement, y: RingElement) -> RingElement:
    return _own(p, x) * _own(p, y)


def scale(p: RingPresentation, x: RingElement, q: Rational) -> RingElement:
    return _own(p, x) * Fraction(q)


def exp_neg(p: RingPresentation, D: RingElement) -> RingElement:
    """``exp(-D)`` truncated at the top degree; ``D`` must have no constant term."""
    if _own(p, D).constant_term():
        raise InputError("exp_neg needs a nilpotent argument (no degree 0 term)")
    result = p.one()
    power = p.one()
    for k in range(1, p.top_degree + 1):
        power = power * (-D)
        if power.is_zero():
            break
        result = result + power / factorial(k)
    return result


def fiber_integrate_3(p: RingPresentation, x: RingElement, target: RingPresentation | None = None):
    """Integrate along the third curve factor.

    A monomial containing ``eta3`` maps to the monomial with ``eta3`` removed;
    every other monomial (odd or zero degree along the fiber) maps to 0.
    """
    target = target or base_presentation(p)
    i3 = p.index["eta3"]
    touching = [i for i, g in enumerate(p.generators) if "C3" in g.factors]
    out = []
    for exp, c in _own(p, x)._terms.items():
        if exp[i3] != 1:
            continue
        if any(exp[i] for i in touching if i != i3):
            continue
        mono = tuple((n, e) for n, e in p.monomial(exp) if n != "eta3")
        out.append((mono, c))
    return target.element(out)


# W-part of a top-degree monomial -> multiple of c2, as a function of s.
def _w_substitutions(s: int) -> dict[Monomial, Fraction]:
    return {
        (("c1", 2),): Fraction(3 * s + 5, s + 3),
        (("theta", 1), ("c1", 1)): Fraction(s + 1),
        (("theta", 2),): Fraction((s + 1) * (s + 2), 3),
        (("c2", 1),): Fraction(1),
    }


def top_evaluate(p: RingPresentation, x: RingElement, s: int) -> Fraction:
    """Degree of a top-degree class on ``C x C x W^2_d``.

    Rewrites every degree 2 class on ``W`` as a multiple of ``c2`` and uses
    ``c2 = N_{g,2,d}`` points.  Returns the coefficient of ``eta1*eta2*[pt]``.
    """
    _own(p, x)
    if not x.is_homogeneous():
        raise InputError("top_evaluate needs a homogeneous element")
    if x.is_zero():
        return Fraction(0)
    if x.degrees() != {4}:
        raise InputError(f"top_evaluate needs degree 4, got {sorted(x.degrees())}")
    subs = _w_substitutions(s)
    total = Fraction(0)
    for mono, c in x.terms.items():
        names = dict(mono)
        if any(n.startswith("gamma") for n in names):
            continue
        if names.pop("eta1", 0) != 1 or names.pop("eta2", 0) != 1:
            continue
        w_part = tuple(sorted(names.items(), key=lambda t: generator_sort_key(t[0])))
        if w_part not in subs:
            raise InputError(f"no substitution for W-class {_fmt_mono(w_part)}")
        total += c * subs[w_part]
    return total * castelnuovo(3 * s, 2, 2 * s + 2)
