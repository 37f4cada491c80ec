from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from netclass.errors import InputError, RewriteError
from netclass.exterior import OddClassModel
from netclass.ring import (
    Generator,
    RingPresentation,
    add,
    base_presentation,
    curve_product_presentation,
    exp_neg,
    fiber_integrate_3,
    mul,
    normal_form,
    scale,
    standard_presentation,
    top_evaluate,
)

P2 = standard_presentation(2)
NAMES = P2.names


def rule_map(p):
    return {r.lhs: r.rhs for r in p.rules}


def test_presentation_rules():
    rules = rule_map(P2)
    assert rules[(("gamma12", 2),)] == (((("eta1", 1), ("eta2", 1)), Fraction(-10)),)
    assert rules[(("gamma34", 2),)] == (((("eta3", 1), ("theta", 1)), Fraction(-2)),)
    for s in (1, 3):
        assert rule_map(standard_presentation(s))[(("eta1", 2),)] == ()


def test_generator_order_and_degrees():
    assert NAMES == (
        "eta1", "eta2", "eta3",
        "gamma12", "gamma13", "gamma14", "gamma23", "gamma24", "gamma34",
        "theta", "c1", "c2", "c3",
    )
    assert P2.degrees[NAMES.index("c3")] == 3
    assert P2.generators[NAMES.index("gamma14")].factor_tag == "mixed"
    assert P2.generators[NAMES.index("eta2")].factor_tag == "C2"


@pytest.mark.parametrize("s", [0, -1, 1.5, True])
def test_standard_presentation_rejects_bad_s(s):
    with pytest.raises(InputError):
        standard_presentation(s)


def test_normal_form_examples():
    g13, g23, g34, e1, e3, g14, th = P2.gens("gamma13", "gamma23", "gamma34", "eta1", "eta3", "gamma14", "theta")
    assert g13 * g23 == e3 * P2.gen("gamma12")
    assert e1 * e1 * th == 0
    assert g13 * g34 == e3 * g14
    assert normal_form(P2, g13 * g23) == g13 * g23


def test_irreducible_pair_is_kept():
    g14, g24 = P2.gens("gamma14", "gamma24")
    prod = g14 * g24
    assert prod.terms == {(("gamma14", 1), ("gamma24", 1)): 1}


def test_arithmetic_examples():
    e1, g13, e3 = P2.gens("eta1", "gamma13", "eta3")
    x = e1 + g13
    # 2 eta1 gamma13 + gamma13^2, and eta1 gamma13 = 0
    assert mul(P2, x, x) == -2 * 5 * e1 * e3
    assert scale(P2, x, 0) == P2.zero()
    assert mul(P2, x, P2.one()) == x
    assert add(P2, x, -x).is_zero()


def test_mixed_presentations_rejected():
    other = standard_presentation(3)
    with pytest.raises(InputError):
        P2.gen("eta1") + other.gen("eta1")
    with pytest.raises(InputError):
        mul(P2, other.gen("eta1"), P2.gen("eta1"))


def test_unknown_or_reversed_gamma_rejected():
    with pytest.raises(InputError):
        P2.gen("gamma21")
    with pytest.raises(InputError):
        P2.parse("1/1*gamma31^1")


def test_exp_neg_examples():
    e1 = P2.gen("eta1")
    assert exp_neg(P2, e1) == 1 - e1
    assert exp_neg(P2, P2.zero()) == P2.one()
    with pytest.raises(InputError):
        exp_neg(P2, 1 + e1)


def test_exp_neg_matches_series():
    th, c1 = P2.gens("theta", "c1")
    D = th + c1
    expected = 1 - D + D * D / 2
    assert exp_neg(P2, D) == expected


def test_fiber_integration_examples():
    base = base_presentation(P2)
    e3, th, g34, g13 = P2.gens("eta3", "theta", "gamma34", "gamma13")
    assert fiber_integrate_3(P2, e3 * th) == base.gen("theta")
    assert fiber_integrate_3(P2, g34).is_zero()
    assert fiber_integrate_3(P2, g34 * g34) == -2 * base.gen("theta")
    assert fiber_integrate_3(P2, g13 * P2.gen("gamma24")).is_zero()
    assert fiber_integrate_3(P2, th).is_zero()
    assert "eta3" not in base.names and "gamma13" not in base.names


def test_top_evaluate_examples():
    base = base_presentation(P2)
    e1, e2, th, c2, g14, g24 = base.gens("eta1", "eta2", "theta", "c2", "gamma14", "gamma24")
    assert top_evaluate(base, e1 * e2 * th * th, 2) == 20
    for s in (1, 2, 3):
        b = base_presentation(standard_presentation(s))
        assert top_evaluate(b, b.gen("eta1") * b.gen("eta2") * b.gen("c2"), s) == {1: 1, 2: 5, 3: 42}[s]
    assert top_evaluate(base, e1 * e2 * g14 * g24, 2) == 0
    with pytest.raises(InputError):
        top_evaluate(base, e1 * e2 * th + e1, 2)
    with pytest.raises(InputError):
        top_evaluate(base, e1 * e2, 2)


def test_caps():
    th, c1, c2, c3, e1, e2 = P2.gens("theta", "c1", "c2", "c3", "eta1", "eta2")
    assert (th * th * th).is_zero()
    assert (c1 * c2).is_zero()
    assert not (th * c1).is_zero()
    assert (e1 * c3).is_zero()
    assert (e1 * e2 * P2.gen("eta3") * th * th).is_zero()  # past top degree
    # gamma14 carries half a degree on W
    assert (P2.gen("gamma14") * th * th).is_zero()


def test_canonical_text_roundtrip():
    e1, g12, th = P2.gens("eta1", "gamma12", "theta")
    x = 3 - 2 * g12 + Fraction(1, 2) * e1 * th
    text = str(x)
    assert text == "3/1*1 + -2/1*gamma12^1 + 1/2*eta1^1*theta^1"
    assert P2.parse(text) == x
    assert str(P2.zero()) == "0"
    assert P2.parse("0").is_zero()


def test_rewrite_guard():
    a = Generator("a", 1, ("X",))
    b = Generator("b", 1, ("X",))
    looping = RingPresentation(
        [a, b],
        [((("a", 1), ("b", 1)), [((("a", 1), ("b", 1)), 1)])],
        {"X": 10},
        10,
    )
    with pytest.raises(RewriteError):
        looping.gen("a") * looping.gen("b")


def test_rule_degree_validation():
    a = Generator("a", 1, ("X",))
    b = Generator("b", 2, ("X",))
    with pytest.raises(InputError):
        RingPresentation([a, b], [((("a", 2),), [((("a", 1),), 1)])], {}, 4)
    with pytest.raises(InputError):
        Generator("z", 0, ("X",))


# -- property suites ---------------------------------------------------------

def _degree(mono):
    return sum(e * P2.degrees[P2.index[n]] for n, e in mono)


def _monomials(p, max_degree=4):
    out = [()]
    frontier = [()]
    for _ in range(max_degree):
        new = []
        for m in frontier:
            d = dict(m)
            for n in p.names:
                d2 = dict(d)
                d2[n] = d2.get(n, 0) + 1
                mono = tuple((k, d2[k]) for k in p.names if k in d2)
                if sum(e * p.degrees[p.index[k]] for k, e in mono) <= max_degree:
                    new.append(mono)
        new = sorted(set(new))
        out += new
        frontier = new
    return sorted(set(out))


MONOS = _monomials(P2)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
elements = st.lists(
    st.tuples(st.sampled_from(MONOS), coeffs), min_size=0, max_size=4
).map(P2.element)
homogeneous = st.integers(0, 4).flatmap(
    lambda k: st.lists(st.tuples(st.sampled_from([m for m in MONOS if _degree(m) == k]), coeffs), max_size=3)
).map(P2.element)

PROPS = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@PROPS
@given(elements)
def test_normal_form_idempotent(x):
    assert normal_form(P2, normal_form(P2, x)) == normal_form(P2, x)


@PROPS
@given(elements, elements)
def test_commutative(x, y):
    assert x * y == y * x


@PROPS
@given(elements, elements, elements)
def test_associative_and_distributive(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@PROPS
@given(homogeneous, homogeneous)
def test_grading(x, y):
    prod = x * y
    if not x.is_zero() and not y.is_zero():
        (dx,), (dy,) = x.degrees(), y.degrees()
        assert prod.is_homogeneous(dx + dy)


@PROPS
@given(elements)
def test_exp_neg_inverse(x):
    D = x - x.constant_term()
    assert exp_neg(P2, D) * exp_neg(P2, -D) == P2.one()


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from(NAMES), min_size=2, max_size=6), st.randoms(use_true_random=False))
def test_rule_order_does_not_matter(word, rnd):
    """Confluence: the normal form of a raw monomial is independent of rule order."""
    shuffled = list(P2.rules)
    rnd.shuffle(shuffled)
    other = RingPresentation(
        P2.generators, [(r.lhs, r.rhs) for r in shuffled], P2.degree_caps, P2.top_degree
    )
    mono = {}
    for n in word:
        mono[n] = mono.get(n, 0) + 1
    mono = tuple(mono.items())
    a = P2.element({mono: 1})
    b = other.element({mono: 1})
    assert str(a) == str(b)


# Homomorphism into the brute-force odd-class model (genus 2 curves).
H = 2
PH = curve_product_presentation(H)
MODEL = OddClassModel(H)
ODD_NAMES = [n for n in PH.names if not n.startswith("c")]


def _truncate(x):
    out = {}
    for (eta, odds), c in x.items():
        w = sum(1 for f, _ in odds if f == 4)
        deg = 2 * sum(eta) + len(odds)  # in half units
        if deg <= 2 * PH.top_degree and w <= 2 * PH.degree_caps["W"]:
            out[(eta, odds)] = c
    return out


model_elements = st.lists(
    st.tuples(st.lists(st.sampled_from(ODD_NAMES), min_size=1, max_size=2), st.integers(-3, 3)),
    max_size=3,
).map(lambda ts: sum((c * _word(PH, w) for w, c in ts), PH.zero()))


def _word(p, w):
    out = p.one()
    for n in w:
        out = out * p.gen(n)
    return out


@settings(max_examples=200, deadline=None)
@given(model_elements, model_elements)
def test_products_agree_with_odd_class_model(x, y):
    direct = _truncate(MODEL.mul(MODEL.realize(x), MODEL.realize(y)))
    assert MODEL.realize(x * y) == direct
