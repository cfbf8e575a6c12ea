from __future__ import annotations

from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from cohinv import wittmilnor as wm
from cohinv.errors import NotInIPowerError

T = wm.FieldTower.of("t1", "t2", "t3")
t1, t2, t3 = (T.var(n) for n in T.names)
XYZ = wm.FieldTower.of("x", "y", "z")
x, y, z = (XYZ.var(n) for n in XYZ.names)


def W(*monos, tower=T):
    return wm.WittClass(tower, frozenset(monos))


def K(deg, *monos, tower=T):
    return wm.KClass(tower, deg, frozenset(monos))


Y1, Y2, Y3 = 1, 2, 4


def test_square_class_embed():
    assert wm.square_class_embed(T.square_class("1")) == wm.WittClass.one(T)
    assert wm.square_class_embed(t1) == W(0, Y1)
    assert wm.square_class_embed(t1 * t2) == W(0, Y1, Y2, Y1 | Y2)


def test_diag_form():
    one = T.square_class("1")
    assert wm.diag_form([one, one]).is_zero()
    assert wm.diag_form([t1]) == W(0, Y1)
    assert wm.diag_form([one, t1]) == W(Y1)


def test_pfister():
    assert wm.pfister(t1, t2) == W(Y1 | Y2)
    assert wm.pfister(t1, t1).is_zero()
    assert wm.pfister(t1, t2 * t3) == W(Y1 | Y2, Y1 | Y3, Y1 | Y2 | Y3)


def test_in_I_power():
    assert wm.in_I_power(wm.pfister(t1, t2, t3), 3)
    assert not wm.in_I_power(wm.diag_form([t1]), 1)
    assert all(wm.in_I_power(wm.WittClass.zero(T), n) for n in range(5))


def test_e_n():
    assert wm.e_n(wm.pfister(x, y, z), 3) == K(3, 7, tower=XYZ)
    assert wm.e_n(wm.pfister(x, y, z), 3).format() == "x∧y∧z"
    assert wm.e_n(wm.pfister(t1, t2), 2) == wm.symbol(t1, t2)
    s = wm.pfister(x, y) + wm.pfister(x, z) + wm.pfister(x, y * z)
    assert wm.in_I_power(s, 3)
    assert wm.e_n(s, 3).format() == "x∧y∧z"
    with pytest.raises(NotInIPowerError):
        wm.e_n(wm.pfister(t1, t2), 3)


def test_symbol_and_cup():
    assert wm.symbol(t1, t2) == K(2, Y1 | Y2)
    assert wm.symbol(t1, t1).is_zero()
    assert wm.symbol(t1, t2 * t3) == wm.symbol(t1, t2) + wm.symbol(t1, t3)
    assert wm.cup(wm.symbol(t1), wm.symbol(t2)) == wm.symbol(t1, t2)
    assert wm.cup(wm.symbol(t1, t2), wm.symbol(t2)).is_zero()


def test_residue():
    assert wm.residue_last(wm.symbol(x, y, z)).format() == "x∧y"
    assert wm.residue_last(wm.symbol(x, y)).is_zero()
    assert wm.residue_last(wm.KClass.zero(XYZ, 3)).is_zero()
    assert wm.residue_last(wm.symbol(x, y, z)).tower == XYZ.drop_last()


def test_quaternion_trace_form():
    assert wm.quaternion_trace_form(x, y) == wm.pfister(x, y)
    assert wm.quaternion_trace_form(x, x).is_zero()
    assert wm.quaternion_trace_form(XYZ.square_class("1"), y).is_zero()
    assert wm.matrix_involution_trace_form(XYZ).is_zero()


def test_tower_parsing():
    assert XYZ.square_class("xy") == x * y
    assert XYZ.square_class(["x", "x"]).is_trivial()
    with pytest.raises(ValueError):
        XYZ.square_class("w")
    with pytest.raises(ValueError):
        wm.FieldTower.of("x", "x")


# group-ring oracle ---------------------------------------------------------------------
# With -1 a square, W(F) is the group ring GF(2)[F*/F*^2]; y_i = 1 + [t_i].

U = wm.FieldTower.of("a", "b", "c", "d")


def to_group_ring(w: wm.WittClass) -> frozenset[int]:
    out: set[int] = set()
    for s in w.terms:
        sub = s
        while True:
            out ^= {sub}
            if sub == 0:
                break
            sub = (sub - 1) & s
    return frozenset(out)


def ring_mul(a, b):
    out: set[int] = set()
    for u in a:
        for v in b:
            out ^= {u ^ v}
    return frozenset(out)


classes = st.integers(0, 15).map(lambda b: wm.SquareClass(U, b))


@settings(max_examples=200, deadline=None)
@given(st.lists(classes, max_size=8))
def test_diag_form_matches_group_ring(cls):
    expect: set[int] = set()
    for c in cls:
        expect ^= {c.bits}
    assert to_group_ring(wm.diag_form(cls, tower=U)) == frozenset(expect)


@settings(max_examples=200, deadline=None)
@given(st.lists(classes, max_size=6), st.lists(classes, max_size=6))
def test_product_matches_group_ring(a, b):
    fa, fb = wm.diag_form(a, tower=U), wm.diag_form(b, tower=U)
    assert to_group_ring(fa * fb) == ring_mul(to_group_ring(fa), to_group_ring(fb))


@settings(max_examples=200, deadline=None)
@given(st.lists(classes, min_size=1, max_size=4))
def test_pfister_symbol(cls):
    n = len(cls)
    p = wm.pfister(*cls)
    assert wm.in_I_power(p, n)
    assert wm.e_n(p, n) == wm.symbol(*cls)
    # <<a>> = <1> + <a> in the group ring
    factors = [frozenset({0}) ^ frozenset({c.bits}) for c in cls]
    assert to_group_ring(p) == reduce(ring_mul, factors)
