
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from netclass import chern
from netclass.chern import CHARACTER, TOTAL_CHERN, ChernData
from netclass.errors import InputError
from netclass.pipeline import reference_c_M, reference_ch_M
from netclass.ring import base_presentation, standard_presentation

P = standard_presentation(2)
B = base_presentation(P)


def _total(rank, *parts, pres=B):
    return ChernData(rank, (pres.one(),) + tuple(parts), TOTAL_CHERN)


def test_line_bundle_character_to_chern():
    th = B.gen("theta")
    ch = chern.line_bundle_character(th)
    assert ch.parts == (1, th, th * th / 2, th * th * th / 6)
    c = chern.character_to_chern(ch)
    assert c.parts == (1, th, 0, 0)


def test_zero_character_rank_3():
    zero = B.zero()
    c = chern.character_to_chern(ChernData(3, (B.const(3), zero, zero, zero), CHARACTER))
    assert all(c[k].is_zero() for k in (1, 2, 3))


def test_display_character_gives_display_classes():
    for s in (1, 2, 3):
        b = base_presentation(standard_presentation(s))
        g, d = 3 * s, 2 * s + 2
        ch = ChernData.from_element(reference_ch_M(b, g, d), 3, up_to=3)
        c = chern.character_to_chern(ch)
        assert tuple(c.parts[1:]) == reference_c_M(b, g, d)
        back = chern.chern_to_character(c, rank=3)
        assert back.total() == reference_ch_M(b, g, d)


def test_rank_one_theta_character():
    th = B.gen("theta")
    ch = chern.chern_to_character(_total(1, th), up_to=2)
    assert ch.parts == (1, th, th * th / 2)


def test_newton_formulas_symbolically():
    """The recursion agrees with the closed forms for c1, c2, c3."""
    p1, p2, p3 = sympy.symbols("p1 p2 p3")
    ch = ChernData(3, (sympy.Integer(3), p1, p2 / 2, p3 / 6), CHARACTER)
    c = chern.character_to_chern(ch)
    c1 = p1
    c2 = (c1**2 - p2) / 2
    c3 = (p3 - c1**3 + 3 * c1 * c2) / 3
    for got, want in zip(c.parts[1:], (c1, c2, c3)):
        assert sympy.expand(got - want) == 0


def test_porteous_quotient_symbolic():
    v1, v2, m1, m2 = sympy.symbols("v1 v2 m1 m2")
    cV = ChernData(3, (1, v1, v2), TOTAL_CHERN)
    cM = ChernData(3, (1, m1, m2), TOTAL_CHERN)
    got = chern.porteous_codim2_quotient(cV, cM)
    # c2(V^) + c1(V^) c1(M) + c1(M)^2 - c2(M)
    assert sympy.expand(got - (v2 - v1 * m1 + m1**2 - m2)) == 0
    same = ChernData(3, (1, 0, 0), TOTAL_CHERN)
    assert chern.porteous_codim2_quotient(same, same) == 0
    trivial = ChernData(3, (1, 0, 0), TOTAL_CHERN)
    assert sympy.expand(chern.porteous_codim2_quotient(trivial, cM) - (m1**2 - m2)) == 0


def test_porteous_e_classes_trivial_cases():
    f1, f2, f3 = B.gens("c1", "c2", "c3")
    fc = _total(3, f1, f2, f3)
    zero = _total(3, B.zero(), B.zero(), B.zero())
    assert chern.porteous_e_classes(fc, zero) == (f1, f2, f3)
    c1, c2, c3 = reference_c_M(B, 6, 6)
    e = chern.porteous_e_classes(zero, _total(3, c1, c2, c3))
    assert e == (c1, c1 * c1 - c2, c1 * c1 * c1 + c3 - 2 * c1 * c2)
    e1, _, _ = chern.porteous_e_classes(fc, _total(3, c1, c2, c3))
    assert e1 == f1 + c1


def test_porteous_det():
    f1, f2, f3 = B.gens("c1", "c2", "c3")
    e2 = f2 + f1 * f1
    assert chern.porteous_det_2x2(B.zero(), e2, B.zero()) == e2 * e2
    assert chern.porteous_det_2x2(B.zero(), B.zero(), B.zero()).is_zero()
    with pytest.raises(InputError):
        chern.porteous_det_2x2(f2, f2, f3)
    with pytest.raises(InputError):
        chern.porteous_det_2x2(f1, f1, f3)


def test_chern_data_validation():
    th = B.gen("theta")
    with pytest.raises(InputError):
        ChernData(1, (B.one(), th * th), TOTAL_CHERN)
    with pytest.raises(InputError):
        ChernData(2, (B.one(), th), CHARACTER)
    with pytest.raises(InputError):
        ChernData(1, (B.one(),), "other")
    with pytest.raises(InputError):
        chern.character_to_chern(_total(1, th))
    with pytest.raises(InputError):
        chern.character_to_chern(ChernData(1, (B.one(), th), CHARACTER), up_to=3)


def test_whitney_for_two_line_bundles():
    x, y = P.gens("eta1", "theta")
    chx, chy = chern.line_bundle_character(x), chern.line_bundle_character(y)
    summed = chern.add_characters(chx, chy)
    assert summed.rank == 2
    lhs = chern.character_to_chern(summed)
    cx, cy = chern.character_to_chern(chx), chern.character_to_chern(chy)
    assert lhs.parts == chern.multiply_total(cx, cy, 3).parts
    assert lhs.parts == (1, x + y, x * y, 0)


# -- roundtrip on random rank 3 data -----------------------------------------

def _homogeneous(k):
    monos = [m for m in _MONOS if sum(e * B.degrees[B.index[n]] for n, e in m) == k]
    return st.lists(
        st.tuples(st.sampled_from(monos), st.fractions(-6, 6, max_denominator=5)), max_size=4
    ).map(B.element)


def _monos():
    out = set()
    names = B.names

    def rec(start, mono, deg):
        out.add(tuple(sorted(mono.items(), key=lambda t: names.index(t[0]))))
        for i in range(start, len(names)):
            n = names[i]
            k = B.degrees[i]
            if deg + k <= 3:
                mono[n] = mono.get(n, 0) + 1
                rec(i, mono, deg + k)
                mono[n] -= 1
                if not mono[n]:
                    del mono[n]

    rec(0, {}, 0)
    return sorted(out)


_MONOS = _monos()


@settings(max_examples=1000, deadline=None)
@given(_homogeneous(1), _homogeneous(2), _homogeneous(3))
def test_roundtrip_total_chern(c1, c2, c3):
    c = _total(3, c1, c2, c3)
    back = chern.character_to_chern(chern.chern_to_character(c))
    assert back.parts == c.parts


@settings(max_examples=1000, deadline=None)
@given(_homogeneous(1), _homogeneous(2), _homogeneous(3))
def test_roundtrip_character(a1, a2, a3):
    ch = ChernData(3, (B.const(3), a1, a2, a3), CHARACTER)
    back = chern.chern_to_character(chern.character_to_chern(ch), rank=3)
    assert back.parts == ch.parts


@settings(max_examples=300, deadline=None)
@given(_homogeneous(1), _homogeneous(2), _homogeneous(3))
def test_det_is_degree_four(e1, e2, e3):
    det = chern.porteous_det_2x2(e1, e2, e3)
    assert det.is_zero() or det.is_homogeneous(4)
