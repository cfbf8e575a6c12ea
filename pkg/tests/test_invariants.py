from __future__ import annotations

import itertools
import random

import pytest
from sympy import Matrix, Rational

from cohinv import invariants as inv
from cohinv.abelian import FiniteAbelianGroup
from cohinv.errors import UnsupportedShapeError, UnsupportedTypeError
from cohinv.intlat import IntegerLattice
from cohinv.lattice import GroupSpec, adjoint, simply_connected, t_star_basis
from cohinv.quadratic import QuadraticForm

from conftest import sweep

G = FiniteAbelianGroup.from_cyclic_orders
P = GroupSpec(("D6", "A1"), ((1, 0, 0), (0, 1, 1)))


def form(n, terms):
    c = [[0] * n for _ in range(n)]
    for (j, k), v in terms.items():
        c[min(j, k) - 1][max(j, k) - 1] += v
    return QuadraticForm(tuple(map(tuple, c)))


# q generators and c2 ----------------------------------------------------------------


def test_q_generator_a1():
    assert inv.q_generator("A1") == form(1, {(1, 1): 1})


def test_q_generator_e7_printed():
    terms = {(j, j): 1 for j in range(1, 8)}
    terms[(1, 3)] = -1
    terms[(2, 4)] = -1
    for j in range(3, 7):
        terms[(j, j + 1)] = -1
    assert inv.q_generator("E7") == form(7, terms)


def test_q_generator_d6_printed():
    terms = {(s, s): 1 for s in range(1, 7)}
    terms[(4, 6)] = -1
    for s in range(1, 5):
        terms[(s, s + 1)] = -1
    assert inv.q_generator("D6") == form(6, terms)


def test_q_generator_marker():
    with pytest.raises(UnsupportedTypeError):
        inv.q_generator("G2")


def test_c2_examples():
    assert inv.c2_orbit("A1", (1,)) == (-1,)
    assert inv.c2_orbit("D6", (1, 0, 0, 0, 0, 0)) == (-2,)
    for a, b in itertools.product(range(-2, 3), repeat=2):
        size_a, size_b = (2 if a else 1), (2 if b else 1)
        want = (-a * a * size_b, -b * b * size_a)
        assert inv.c2_orbit(["A1", "A1"], [(a,), (b,)]) == want
    assert inv.c2_orbit(["A1", "A1"], [(1,), (2,)]) == (-2, -8)


def test_c2_product_formula_matches_enumeration():
    rng = random.Random(3)
    for _ in range(30):
        comps = tuple(rng.choice(["A1", "D6", "E6"]) for _ in range(2))
        spec = GroupSpec(comps)
        lam = [tuple(rng.randint(-1, 1) for _ in range(s.rank)) for s in spec.components]
        assert inv.c2_orbit(spec, lam) == inv.c2_orbit(spec, lam, enumerate_orbit=True)


# Q(G) -------------------------------------------------------------------------------


def q_oracle(spec: GroupSpec, d) -> bool:
    """sum d_i q_i is integral on the cocharacter lattice dual to T*."""
    B = Matrix(t_star_basis(spec))
    dual = (B.inv()).T  # rows: dual basis in coweight coordinates
    blocks, off = [], 0
    for t in spec.components:
        blocks.append((off, inv.q_generator(t)))
        off += t.rank

    def value(x):
        total = Rational(0)
        for (o, q), di in zip(blocks, d):
            xs = x[o:o + q.rank]
            total += di * sum(q.coeffs[j][k] * xs[j] * xs[k] for j in range(q.rank) for k in range(j, q.rank))
        return total

    rows = [list(dual.row(i)) for i in range(dual.rows)]
    for i, x in enumerate(rows):
        if not value(x).is_integer:
            return False
        for y in rows[i + 1:]:
            s = [a + b for a, b in zip(x, y)]
            if not (value(s) - value(x) - value(y)).is_integer:
                return False
    return True


@pytest.mark.parametrize("comps", [("E6",), ("E7",), ("E7", "E7"), ("E6", "E6"), ("D6", "A1"), ("E6", "E7")])
def test_q_of_matches_oracle(comps):
    probe = GroupSpec(comps)
    rng = random.Random("".join(comps))
    specs = [GroupSpec(comps, tuple(tuple(rng.randrange(m) for m in probe.moduli)
                                    for _ in range(rng.randint(0, 2)))) for _ in range(6)]
    specs += [adjoint(comps), simply_connected(comps)]
    box = range(-4, 5) if len(comps) == 1 else range(-2, 5)
    for spec in specs:
        q = inv.q_of(spec)
        for d in itertools.product(box, repeat=len(comps)):
            assert q.contains(d) == q_oracle(spec, d), (spec, d)


def test_q_of_examples():
    assert inv.q_of(GroupSpec(("E7",), ((1,),))) == IntegerLattice.full(1)
    assert inv.q_of(adjoint(["E7"])) == IntegerLattice.diagonal([4])
    want = IntegerLattice.full(2).congruence_sublattice([1, 1], 4)
    assert inv.q_of(GroupSpec(("E7", "E7"), ((1, 1),))) == want
    assert inv.q_of(GroupSpec(("D6",), ((1, 1),))) == IntegerLattice.diagonal([2])
    assert inv.q_of(simply_connected(["D6"])) == IntegerLattice.full(1)
    assert inv.q_of(adjoint(["D6"])) == IntegerLattice.diagonal([4])


# Dec --------------------------------------------------------------------------------


def test_dec_examples():
    assert inv.dec_search(adjoint(["E7"]), 2) == IntegerLattice.diagonal([12])
    assert inv.dec_search(simply_connected(["E6"]), 2) == IntegerLattice.diagonal([6])
    assert inv.dec_search(P, 2) == inv.dec_closed(P)
    assert inv.dec_closed(GroupSpec(("E6", "E7"))) == IntegerLattice.diagonal([6, 12])


def test_dec_closed_unsupported():
    with pytest.raises(UnsupportedShapeError):
        inv.dec_closed(GroupSpec(("A1", "D6")))


def test_dec_search_monotone_in_bound():
    for spec in [adjoint(["E6"]), GroupSpec(("E6", "E6"), ((1, 1),)), P, adjoint(["E7"])]:
        lo, hi = inv.dec_sandwich(spec)
        a, b = inv.dec_search(spec, 1), inv.dec_search(spec, 2)
        assert a.is_sublattice_of(b) and b.is_sublattice_of(hi) and lo.is_sublattice_of(inv.q_of(spec))


def test_dec_e6_adjoint_needs_larger_box():
    # the weights of order 3 in Lambda/T* with entries in [-2, 2] only reach 12Zq;
    # 3 w_6 lies in T* and brings the lattice down to 6Zq
    spec = adjoint(["E6"])
    assert inv.dec_search(spec, 2) == IntegerLattice.diagonal([12])
    assert inv.dec_search(spec, 3) == IntegerLattice.diagonal([6])


# invariant groups -----------------------------------------------------------------------


def test_inv3_ind_examples():
    assert inv.inv3_ind(simply_connected(["E6"])) == G([6])
    assert inv.inv3_ind(adjoint(["E7"])) == G([3])
    assert inv.inv3_ind(simply_connected(["A1"])).is_trivial()


def test_red_sublattice_examples():
    e6 = adjoint(["E6"])
    assert inv.red_sublattice(e6) == inv.q_of(e6) & IntegerLattice.diagonal([3])
    assert inv.red_sublattice(adjoint(["E7"])) == IntegerLattice.diagonal([4])
    for comps in (["E6", "E6"], ["E7"], ["D6", "A1"]):
        sc = simply_connected(comps)
        assert inv.red_sublattice(sc) == inv.q_of(sc)


def test_inv3_red_examples():
    assert inv.inv3_red(GroupSpec(("E6",), ((1,),))) == G([6])
    assert inv.inv3_red(GroupSpec(("E7",), ((1,),))) == G([3, 4])
    assert inv.inv3_red(P) == G([2])


def test_red_closed_form_examples():
    assert inv.red_closed_form(adjoint(["E6", "E6"])) == G([2, 2])
    assert inv.red_closed_form(GroupSpec(("E7", "E7"), ((1, 1),))) == G([2, 3, 3])
    assert inv.red_closed_form(simply_connected(["E7"])) == G([3, 4])


def test_red_is_subgroup_of_ind():
    # Inv_red -> Inv_ind is injective, so |red| divides |ind| and each p-part embeds
    for spec in itertools.chain(sweep(("E6",), 3, 2), sweep(("E7",), 2, 2), sweep(("D6", "A1"), 2, 1)):
        red, ind = inv.inv3_red(spec), inv.inv3_ind(spec)
        assert inv.red_sublattice(spec).is_sublattice_of(inv.q_of(spec))
        assert ind.order % red.order == 0
        for p in (2, 3):
            a, b = red.p_part(p).elementary_divisors(), ind.p_part(p).elementary_divisors()
            assert len(a) <= len(b)


@pytest.mark.slow
def test_corrected_d6a1_count_matches_lattice():
    for spec in sweep(("D6", "A1"), 2, 2):
        assert inv.red_closed_form(spec, j2_correction=True) == inv.inv3_red(spec)


def test_p_part_examples():
    assert inv.p_part(G([6]), 2) == G([2])
    assert inv.p_part(G([3, 4]), 3) == G([3])


# unramified --------------------------------------------------------------------------


def steps(trace):
    return [s.step for s in trace]


def test_nr_e7_square():
    g, trace = inv.inv3_nr(GroupSpec(("E7", "E7"), ((1, 1),)), 2)
    assert g.is_trivial()
    assert steps(trace) == ["e7-restriction-to-d6xa1", "d6xa1-unramified"]
    ev = trace[-1].data
    assert ev["h_spec"]["components"] == ["D6", "A1", "D6", "A1"]


def test_nr_mixed_uses_coprime_split():
    g, trace = inv.inv3_nr(GroupSpec(("E6", "E7")), 2)
    assert g.is_trivial()
    assert steps(trace)[:2] == ["coprime-quotient", "e6-simply-connected"]


def test_nr_odd_prime():
    for spec in (adjoint(["E7"]), P, GroupSpec(("G2", "E6"))):
        g, trace = inv.inv3_nr(spec, 5)
        assert g.is_trivial() and steps(trace) == ["odd-prime-vanishing"]


def test_nr_p_evidence_for_p():
    _, trace = inv.inv3_nr(P, 2)
    ev = trace[0].data
    assert ev["inv3_red"] == "Z/2"
    assert ev["invariant_generators"] == 1


@pytest.mark.parametrize("comps,bad", [(("D6",), "D6"), (("E7", "A1"), "A1"), (("A1", "D6"), "A1")])
def test_nr_out_of_scope(comps, bad):
    with pytest.raises(UnsupportedShapeError, match=bad):
        inv.inv3_nr(GroupSpec(comps), 2)


def test_nr_rejects_non_prime():
    with pytest.raises(ValueError):
        inv.inv3_nr(adjoint(["E7"]), 4)
