from __future__ import annotations

import itertools
import json
import math

import pytest

from cohinv import invariants as inv
from cohinv import torsors as tr
from cohinv import wittmilnor as wm
from cohinv.errors import InvalidTorsorError
from cohinv.gfp import ModPSubgroup
from cohinv.lattice import GroupSpec, adjoint, simply_connected

from conftest import sweep

T = tr.XYZ
x, y, z = (T.var(n) for n in T.names)
one = T.square_class("1")
P = GroupSpec(("D6", "A1"), ((1, 0, 0), (0, 1, 1)))


def Q(a, b):
    return tr.Quaternion(T.square_class(a), T.square_class(b))


def type_a(qs, R):
    return tr.TypeATorsor(T, tuple(qs), ModPSubgroup.span(2, len(qs), R))


# type A ------------------------------------------------------------------------------


def test_validate_type_a_examples():
    assert tr.validate_type_a(type_a([Q("x", "y"), Q("x", "z"), Q("x", "yz")], [[1, 1, 1]]))
    assert not tr.validate_type_a(type_a([Q("x", "y"), Q("x", "z"), Q("y", "z")], [[1, 1, 1]]))
    assert tr.validate_type_a(type_a([Q("x", "y"), Q("y", "z")], []))


def test_e3_r_examples():
    t = type_a([Q("x", "y"), Q("x", "z"), Q("x", "yz")], [[1, 1, 1]])
    assert tr.e3_r(t, (1, 1, 1)) == wm.symbol(x, y, z)
    split = type_a([tr.Quaternion.split(T)] * 3, [[1, 1, 1]])
    assert tr.e3_r(split, (1, 1, 1)).is_zero()
    assert tr.e3_r(type_a([Q("x", "y"), Q("x", "y")], [[1, 1]]), (1, 1)).is_zero()
    with pytest.raises(InvalidTorsorError):
        tr.e3_r(t, (1, 1, 0))
    bad = type_a([Q("x", "y"), Q("x", "z"), Q("y", "z")], [[1, 1, 1]])
    with pytest.raises(InvalidTorsorError):
        tr.e3_r(bad, (1, 1, 1))


def test_witness_lemma22_examples():
    t, res = tr.witness_lemma22((1, 1, 1))
    assert [str(q) for q in t.quaternions] == ["(x,y)", "(x,z)", "(x,yz)"]
    assert res.format() == "x∧y"
    t4, res4 = tr.witness_lemma22((1, 1, 1, 0))
    assert t4.quaternions[:3] == t.quaternions and t4.quaternions[3].is_split()
    assert res4.format() == "x∧y"
    t5, res5 = tr.witness_lemma22((1, 1, 1, 1))
    assert tr.validate_type_a(t5) and not res5.is_zero()
    assert res5 == wm.residue_last(tr.e3_r(t5, (1, 1, 1, 1)))


def test_witness_lemma22_needs_three_entries():
    with pytest.raises(ValueError):
        tr.witness_lemma22((1, 1, 0))


def test_type_a_json_roundtrip():
    t, _ = tr.witness_lemma22((1, 0, 1, 1))
    assert tr.TypeATorsor.from_json(json.loads(json.dumps(t.to_json()))) == t


def test_subgroup_witness_isotropy_rule():
    # a witness exists iff the annihilator of R restricted to supp(r) is not totally isotropic
    for R in [ModPSubgroup.span(2, 3, [[1, 1, 1]]), ModPSubgroup.span(2, 4, [[1, 1, 1, 1]]),
              ModPSubgroup.span(2, 4, [[1, 1, 0, 0], [0, 0, 1, 1]]), ModPSubgroup.full(2, 3)]:
        ann = list(R.annihilator().elements())
        for r in R.elements():
            supp = [i for i, v in enumerate(r) if v]
            anisotropic = any(sum(c[i] * d[i] for i in supp) % 2 for c in ann for d in ann)
            if anisotropic:
                t, res = tr.subgroup_witness(R, r)
                assert tr.validate_type_a(t) and not res.is_zero()
            else:
                with pytest.raises(tr.WitnessUnavailable):
                    tr.subgroup_witness(R, r)


# degree-12 algebras -------------------------------------------------------------------


def test_clifford_pairs():
    tt = tr.TensorTriple(Q("x", "y"), Q("x", "z"))
    assert tr.clifford_pair(tt) == (wm.symbol(x, y), wm.symbol(x, z))
    sa = tr.SplitAdjoint.from_pfister(x, y, z)
    assert all(c.is_zero() for c in tr.clifford_pair(sa))
    assert all(c.is_zero() for c in tr.clifford_pair(tr.Transpose(T)))


def test_t_plus():
    assert tr.t_plus(tr.TensorTriple(Q("x", "y"), Q("x", "z"))) == wm.pfister(x, y) + wm.pfister(x, z)
    assert tr.t_plus(tr.Transpose(T)).is_zero()
    assert tr.t_plus(tr.TensorTriple(Q("x", "y"), Q("x", "y"))).is_zero()
    with pytest.raises(InvalidTorsorError):
        tr.t_plus(tr.SplitAdjoint.hyperbolic(T))


def test_split_adjoint_needs_i3():
    with pytest.raises(InvalidTorsorError):
        tr.SplitAdjoint(tuple([x] + [one] * 11))
    assert tr.SplitAdjoint.from_pfister(x, y, z).psi == wm.pfister(x, y, z)


# H torsors ------------------------------------------------------------------------------


def h_torsor(spec, comps):
    return tr.HTorsor(T, tuple(comps), spec)


def test_e3_j_examples():
    spec = simply_connected(["D6", "A1"])
    eta = h_torsor(spec, [tr.HComponent(tr.SplitAdjoint.from_pfister(x, y, z), False, tr.Quaternion.split(T))])
    assert tr.e3_j(eta, 1).format() == "x∧y∧z"
    assert wm.residue_last(tr.e3_j(eta, 1)).format() == "x∧y"
    hyp = h_torsor(spec, [tr.HComponent(tr.SplitAdjoint.hyperbolic(T), False, tr.Quaternion.split(T))])
    assert tr.e3_j(hyp, 1).is_zero()
    with pytest.raises(tr.UndefinedInvariantError):
        tr.e3_j(h_torsor(P, [tr.HComponent(tr.Transpose(T), False, tr.Quaternion.split(T))]), 1)


def test_phi_form_kernel_examples():
    # Rbar contains ebar_2: the A1 quaternion must be split, so phi vanishes
    spec = GroupSpec(("D6", "A1"), ((0, 0, 1),))
    eta = h_torsor(spec, [tr.HComponent(tr.TensorTriple(Q("x", "y"), Q("x", "z")), False, tr.Quaternion.split(T))])
    assert tr.validate_h(eta)
    assert tr.phi_form(eta, (0, 1)).is_zero()
    # pair case: Q_p = Q_q forced, phi = T + T = 0
    spec2 = GroupSpec(("D6", "A1", "D6", "A1"), ((0, 0, 1, 0, 0, 1),))
    comps = [tr.HComponent(tr.Transpose(T), False, Q("x", "y"))] * 2
    eta2 = h_torsor(spec2, comps)
    assert tr.validate_h(eta2)
    assert tr.e3_rbar(eta2, (0, 1, 0, 1)).is_zero()


def test_phi_form_rejects_outside_rbar1():
    eta = h_torsor(P, [tr.HComponent(tr.Transpose(T), False, tr.Quaternion.split(T))])
    with pytest.raises(InvalidTorsorError):
        tr.phi_form(eta, (1, 0))


def test_all_split_torsor_vanishes():
    spec = simply_connected(["D6", "A1"] * 2)
    eta = h_torsor(spec, [tr.HComponent(tr.Transpose(T), False, tr.Quaternion.split(T))] * 2)
    for rb in itertools.product((0, 1), repeat=4):
        if tr._in_rbar1(spec, rb):
            assert tr.e3_rbar(eta, rb).is_zero()


def test_tensor_triple_lift_equality():
    rho, _ = tr.witness_lemma22((1, 1, 1))
    spec = GroupSpec(("D6", "A1"), ((1, 1, 1),))
    eta = tr.tensor_triple_lift(rho, spec)
    assert tr.validate_h(eta)
    assert tr.e3_rbar(eta, (1, 1)) == tr.e3_r(rho, (1, 1, 1))


def test_witness_cor43_examples():
    eta, res = tr.witness_cor43(simply_connected(["D6", "A1"]), 1)
    assert res.format() == "x∧y" and tr.validate_h(eta)
    eta2, res2 = tr.witness_cor43(simply_connected(["D6", "A1"] * 2), 2)
    assert res2.format() == "x∧y" and tr.validate_h(eta2)
    with pytest.raises(tr.UndefinedInvariantError):
        tr.witness_cor43(P, 1)


def test_h_json_roundtrip():
    eta, _ = tr.witness_cor43(simply_connected(["D6", "A1"] * 2), 1)
    assert tr.HTorsor.from_json(json.loads(json.dumps(eta.to_json()))) == eta


def test_random_torsors_valid(rng):
    for spec in list(sweep(("D6", "A1"), 2, 1)) + [GroupSpec(("D6", "A1") * 2, ((1, 0, 1, 0, 1, 1),))]:
        for _ in range(10):
            eta = tr.random_h_torsor(spec, rng)
            assert tr.validate_h(eta)
            zero = wm.KClass.zero(T, 2)
            for rb in tr.j_set_data(spec).R_bar1.elements():
                assert tr.w2_of_phi(eta, rb) == zero
                tr.e3_rbar(eta, rb)
    R = ModPSubgroup.span(2, 4, [[1, 1, 1, 0]])
    for _ in range(20):
        assert tr.validate_type_a(tr.random_type_a(R, rng))


# surjection report ----------------------------------------------------------------------


def test_surjection_report_examples():
    assert tr.surjection_report(P).quotient_dim == 1
    assert tr.surjection_report(adjoint(["D6", "A1"] * 2)).quotient_dim == 0
    for n in (1, 2):
        rep = tr.surjection_report(simply_connected(["D6", "A1"] * n))
        assert rep.quotient_dim == n + rep.R_bar1.rank - rep.kernel.rank


@pytest.mark.slow
def test_witnessed_dimension_never_exceeds_lattice():
    # ramification witnesses (single-index and tensor-triple) never outnumber
    # the lattice rank of the reductive invariants
    for spec in sweep(("D6", "A1"), 2, 2):
        rep = tr.surjection_report(spec)
        witnessed = len(rep.J1)
        for rb in rep.quotient_basis_rbar:
            try:
                tr.rbar_witness(spec, rb)
            except tr.WitnessUnavailable:
                continue
            witnessed += 1
        assert witnessed <= int(math.log2(inv.inv3_red(spec).order)), spec


def test_e7_sc_h_spec_has_no_tensor_triple_witness():
    rep = tr.surjection_report(P)
    (rb,) = rep.quotient_basis_rbar
    with pytest.raises(tr.WitnessUnavailable):
        tr.rbar_witness(P, rb)
