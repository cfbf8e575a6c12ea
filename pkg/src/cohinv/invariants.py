"""Invariant quadratic forms, the lattices Q(G) and Dec(G), and the invariant groups.

Quadratic classes of a group spec are integer vectors ``d`` meaning
``sum_i d_i q_i`` with ``q_i`` the generator of the invariant forms of the
i-th component.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod

from . import rootdata
from .abelian import FiniteAbelianGroup
from .errors import InvariantViolation, UnsupportedShapeError, UnsupportedTypeError
from .intlat import IntegerLattice, hnf, quotient_invariants, primitive, rational_nullspace
from .lattice import (GroupSpec, coprime_split, fundamental_weight_orders, h_spec_for_e7,
                      j_set_data, split_weight, t_star_lattice)
from .quadratic import QuadraticForm
from .rootdata import SimpleType

# -- invariant forms ---------------------------------------------------------


@lru_cache(maxsize=None)
def q_generator(t) -> QuadraticForm:
    """Primitive positive generator of the W-invariant quadratic forms.

    Solves ``q o s_i = q`` for every simple reflection over Q.
    """
    t = SimpleType.parse(t)
    if t.is_marker:
        raise UnsupportedTypeError(f"{t} is a marker type without lattice data")
    n = t.rank
    slots = [(j, k) for j in range(n) for k in range(j, n)]

    def unit_form(j, k):
        c = [[0] * n for _ in range(n)]
        c[j][k] = 1
        return QuadraticForm(tuple(map(tuple, c)))

    rows: list[list[Fraction]] = []
    for i in range(1, n + 1):
        images = rootdata.reflection_matrix(t, i)
        # column per unknown coefficient: (s_i . u) - u
        cols = []
        for j, k in slots:
            u = unit_form(j, k)
            diff = u.substitute(images) + (-u)
            cols.append([diff.coeffs[a][b] for a, b in slots])
        for r in range(len(slots)):
            rows.append([Fraction(cols[c][r]) for c in range(len(slots))])
    null = rational_nullspace(rows, len(slots))
    if len(null) != 1:
        raise InvariantViolation(f"invariant forms of {t} do not have rank 1")
    v = primitive(null[0])
    if v[slots.index((0, 0))] < 0:
        v = [-x for x in v]
    c = [[0] * n for _ in range(n)]
    for (j, k), x in zip(slots, v):
        c[j][k] = x
    return QuadraticForm(tuple(map(tuple, c)))


def _as_types(components) -> tuple[SimpleType, ...]:
    if isinstance(components, GroupSpec):
        return components.components
    if isinstance(components, (SimpleType, str)):
        return (SimpleType.parse(components),)
    return tuple(SimpleType.parse(c) for c in components)


def c2_orbit(components, lam, *, enumerate_orbit: bool = False) -> tuple[int, ...]:
    """``c_2`` of the orbit sum of ``lam`` as a vector in the q-basis.

    ``components`` is one type, a list of types or a GroupSpec. For a
    product the orbit is the product of the component orbits; the mixed
    terms cancel because each component orbit sums to zero, leaving
    ``c_2 = -1/2 sum_i s_i prod_{k != i} |O_k| q_i``. With
    ``enumerate_orbit`` each component orbit is walked explicitly instead of
    using the stabilizer formula.
    """
    types = _as_types(components)
    single = isinstance(components, (SimpleType, str))
    if single:
        parts = [tuple(lam)]
    else:
        spec = components if isinstance(components, GroupSpec) else GroupSpec(types)
        parts = split_weight(spec, lam)
    sizes, coeffs = [], []
    for t, x in zip(types, parts):
        if enumerate_orbit:
            form = rootdata.orbit_square_sum(t, x)
            size = len(rootdata.weyl_orbit(t, x))
            if form.is_zero():
                s = 0
            else:
                s = form.ratio(q_generator(t))
                if s is None or s.denominator != 1:
                    raise InvariantViolation(f"orbit square sum of {x} is not a multiple of q")
                s = int(s)
        else:
            size, s = rootdata.orbit_profile(t, x)
        sizes.append(size)
        coeffs.append(s)
    out = []
    for i in range(len(types)):
        v = coeffs[i] * prod(sizes[:i] + sizes[i + 1:])
        if v % 2:
            raise InvariantViolation("odd orbit square sum")
        out.append(-v // 2)
    return tuple(out)


# -- Q(G) -------------------------------------------------------------------


def _inverse_scaled(basis: list[list[int]]) -> tuple[list[list[int]], int]:
    """``(det * B^{-1}, det)`` for an upper triangular integer ``B``."""
    n = len(basis)
    det = prod(basis[i][i] for i in range(n))
    inv = [[Fraction(0)] * n for _ in range(n)]
    for c in range(n):
        # solve B x = e_c by back substitution
        for i in range(n - 1, -1, -1):
            s = Fraction(int(i == c)) - sum(basis[i][k] * inv[k][c] for k in range(i + 1, n))
            inv[i][c] = s / basis[i][i]
    y = [[int(x * det) for x in row] for row in inv]
    return y, det


@lru_cache(maxsize=None)
def _q_of(spec: GroupSpec) -> IntegerLattice:
    spec.require_lattice()
    n = len(spec.components)
    if n == 0:
        return IntegerLattice.zero(0)
    basis = t_star_lattice(spec).rows()
    y, det = _inverse_scaled(basis)
    N = len(basis)
    # rows of t-basis vectors in w-coordinates are rows of B; with w = B^{-1} t the
    # Gram matrix in the t-basis is Y^T G Y / det^2, G = polar / 2.
    blocks = []
    off = 0
    for t in spec.components:
        polar = q_generator(t).polar()
        blocks.append((off, t.rank, polar))
        off += t.rank
    # M_i = Y^T P_i Y for each component
    mats = []
    for off, r, p in blocks:
        ysub = y[off:off + r]
        py = [[sum(p[a][b] * ysub[b][c] for b in range(r)) for c in range(N)] for a in range(r)]
        mats.append([[sum(ysub[a][k] * py[a][l] for a in range(r)) for l in range(N)] for k in range(N)])
    D = 2 * det * det
    conds = set()
    for k in range(N):
        for l in range(k, N):
            if k == l:
                u = tuple(m[k][k] % D for m in mats)
            else:
                u = tuple(2 * m[k][l] % D for m in mats)
            if any(u):
                conds.add(u)
    lat = IntegerLattice.full(n)
    for u in sorted(conds):
        lat = lat.congruence_sublattice(u, D)
    return lat


def q_of(spec: GroupSpec) -> IntegerLattice:
    """``{d : sum d_i q_i in S^2(T*)}``."""
    return _q_of(spec)


# -- Dec(G) -------------------------------------------------------------------


def _block_dec(spec: GroupSpec) -> list[int] | None:
    """Diagonal of Dec for products of E6 and E7 blocks."""
    if not all(t in (SimpleType.E6, SimpleType.E7) for t in spec.components):
        return None
    return [6 if t == SimpleType.E6 else 12 for t in spec.components]


def dec_closed(spec: GroupSpec) -> IntegerLattice:
    """Dec(G) from the closed forms for E6/E7 blocks and (D6 x A1)^n.

    Also covers a single D6 or A1 factor.
    """
    spec.require_lattice()
    n = len(spec.components)
    if n == 0:
        return IntegerLattice.zero(0)
    diag = _block_dec(spec)
    if diag is not None:
        return IntegerLattice.diagonal(diag)
    if spec.components == (SimpleType.D6,):
        both = spec.r_contains((1, 1))
        return IntegerLattice.diagonal([2 if both else 4])
    if spec.components == (SimpleType.A1,):
        return IntegerLattice.diagonal([1 if spec.r_contains((1,)) else 4])
    if spec.is_d6a1():
        js = j_set_data(spec)
        m = js.n
        gens = []
        for j in range(1, m + 1):
            v = [0] * (2 * m)
            v[2 * j - 2] = 2 if j in js.J2 else 4
            gens.append(v)
            w = [0] * (2 * m)
            w[2 * j - 1] = 1 if j in js.J3 else 4
            gens.append(w)
        for p, q in js.even_pairs:
            v = [0] * (2 * m)
            v[2 * p - 1] = v[2 * q - 1] = 2
            gens.append(v)
        return IntegerLattice.from_generators(2 * m, gens)
    raise UnsupportedShapeError("no closed form for Dec of this spec; use dec_search")


@lru_cache(maxsize=None)
def _class_bases(t: SimpleType, bound: int) -> dict[tuple[int, ...], tuple[tuple[int, int], ...]]:
    # c_2 is multilinear in the per-component vectors (|O|, s), so each class
    # only needs a Z-basis of the span of its profiles
    out = {}
    for cls, profiles in rootdata.box_profiles(t, bound).items():
        out[cls] = tuple(tuple(r) for r in hnf(sorted(profiles), 2))
    return out


@lru_cache(maxsize=None)
def _class_generators(types: tuple[SimpleType, ...], bound: int):
    """For each assignment of center classes, c_2 vectors spanning its contribution."""
    per = [_class_bases(t, bound) for t in types]
    out = []
    for combo in itertools.product(*[sorted(p) for p in per]):
        bases = [per[i][c] for i, c in enumerate(combo)]
        vecs = set()
        for choice in itertools.product(*bases):
            sizes = [v[0] for v in choice]
            v = []
            for i, (size, s) in enumerate(choice):
                x = s * prod(sizes[:i] + sizes[i + 1:])
                v.append(-x // 2 if x % 2 == 0 else Fraction(-x, 2))
            if any(isinstance(x, Fraction) for x in v):
                raise InvariantViolation("odd orbit coefficient in dec_search")
            if any(v):
                vecs.add(tuple(v))
        flat = tuple(x for c in combo for x in c)
        out.append((flat, tuple(sorted(vecs))))
    return tuple(out)


def dec_search(spec: GroupSpec, bound: int = 2) -> IntegerLattice:
    """Lattice spanned by ``c_2`` of all weights of T* with coefficients in ``[-bound, bound]``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    spec.require_lattice()
    n = len(spec.components)
    if n == 0:
        return IntegerLattice.zero(0)
    gens = []
    for cls, vecs in _class_generators(spec.components, bound):
        if spec.r_contains(cls):
            gens.extend(vecs)
    lat = IntegerLattice.from_generators(n, gens)
    # a bounded search may miss generators, but can never exceed the cover
    _, upper = dec_sandwich(spec)
    if not lat.is_sublattice_of(upper):
        raise InvariantViolation(f"dec_search({bound}) is not inside Dec of the cover for {spec}")
    return lat


def dec_sandwich(spec: GroupSpec) -> tuple[IntegerLattice, IntegerLattice]:
    """Dec of the adjoint quotient and of the simply connected cover.

    Both are products of single-factor values, and Dec(G) lies between them.
    """
    lo, hi = [], []
    for t in spec.components:
        sc = {SimpleType.E6: 6, SimpleType.E7: 12, SimpleType.D6: 2, SimpleType.A1: 1}[t]
        ad = {SimpleType.E6: 6, SimpleType.E7: 12, SimpleType.D6: 4, SimpleType.A1: 4}[t]
        lo.append(ad)
        hi.append(sc)
    return IntegerLattice.diagonal(lo), IntegerLattice.diagonal(hi)


def dec(spec: GroupSpec) -> IntegerLattice:
    """Authoritative Dec(G): the closed form where available, else the bounded search."""
    try:
        return dec_closed(spec)
    except UnsupportedShapeError:
        return dec_search(spec, 2)


# -- invariant groups -----------------------------------------------------------


def _quotient(sub: IntegerLattice, sup: IntegerLattice) -> FiniteAbelianGroup:
    if not sub.is_sublattice_of(sup):
        raise InvariantViolation("expected a sublattice")
    return FiniteAbelianGroup.from_cyclic_orders(quotient_invariants(sub, sup))


def inv3_ind(spec: GroupSpec) -> FiniteAbelianGroup:
    """Q(G) / Dec(G)."""
    spec.require_lattice()
    if not spec.components:
        return FiniteAbelianGroup.trivial()
    return _quotient(dec(spec), q_of(spec))


def red_sublattice(spec: GroupSpec) -> IntegerLattice:
    """Elements of Q(G) whose i-th coefficient is divisible by every order |w_ij| in Lambda/T*."""
    lat = q_of(spec)
    n = len(spec.components)
    for i, row in enumerate(fundamental_weight_orders(spec)):
        k = lcm(*row)
        if k > 1:
            lat = lat.congruence_sublattice([int(a == i) for a in range(n)], k)
    return lat


def inv3_red(spec: GroupSpec) -> FiniteAbelianGroup:
    spec.require_lattice()
    if not spec.components:
        return FiniteAbelianGroup.trivial()
    return _quotient(dec(spec), red_sublattice(spec))


def _count_units(spec: GroupSpec) -> int:
    return sum(1 for i in range(spec.n_characters) if spec.r_contains(spec.unit(i)))


def red_closed_form(spec: GroupSpec, *, j2_correction: bool = False) -> FiniteAbelianGroup:
    """Closed formulas for E6^n, E7^n and (D6 x A1)^n.

    For (D6 x A1)^n the plain count is ``m + l1 - l2``. With
    ``j2_correction`` it also subtracts ``|J2 minus J1|``: for such j the
    form ``2 q_{2j-1}`` already lies in Dec, so ``ebar_{2j-1}`` gives no
    reductive invariant. Only the corrected count matches the lattice
    computation on every spec.
    """
    spec.require_lattice()
    n = len(spec.components)
    if n == 0:
        return FiniteAbelianGroup.trivial()
    if spec.is_homogeneous(SimpleType.E6):
        m = _count_units(spec)
        return FiniteAbelianGroup.from_cyclic_orders([2] * (n - m) + [6] * m)
    if spec.is_homogeneous(SimpleType.E7):
        m = _count_units(spec)
        l = len(spec.R)
        return FiniteAbelianGroup.from_cyclic_orders([2] * (l - m) + [3] * n + [4] * m)
    if spec.is_d6a1():
        js = j_set_data(spec)
        k = js.m + js.l1 - js.l2
        if j2_correction:
            k -= len(set(js.J2) - set(js.J1))
        return FiniteAbelianGroup.from_cyclic_orders([2] * k)
    raise UnsupportedShapeError("no closed form for this spec")


def p_part(g: FiniteAbelianGroup, p: int) -> FiniteAbelianGroup:
    return g.p_part(p)


# -- unramified invariants ---------------------------------------------------------


@dataclass
class TraceStep:
    step: str
    claim: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"step": self.step, "claim": self.claim, "data": self.data}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _check_nr_scope(spec: GroupSpec) -> str:
    comps = spec.components
    exceptional = {SimpleType.G2, SimpleType.F4, SimpleType.E6, SimpleType.E7, SimpleType.E8}
    if all(t in exceptional for t in comps):
        return "exceptional"
    if spec.is_d6a1():
        return "d6a1"
    bad = next(t for t in comps if t not in exceptional)
    raise UnsupportedShapeError(
        f"component {bad} is outside the supported families "
        "(G2, F4, E6, E7, E8 products, or (D6 x A1)^n)")


def _d6a1_evidence(spec: GroupSpec) -> dict:
    from . import torsors

    rep = torsors.surjection_report(spec)
    js = j_set_data(spec)
    cor = {}
    for j in js.J1:
        _, res = torsors.witness_cor43(spec, j)
        cor[str(j)] = res.format()
    lifted, uncovered = {}, []
    for rb in rep.quotient_basis_rbar:
        key = "".join(map(str, rb))
        try:
            _, _, res = torsors.rbar_witness(spec, rb)
        except torsors.WitnessUnavailable:
            uncovered.append(key)
            continue
        lifted[key] = res.format()
    return {
        "h_spec": spec.to_json(),
        "inv3_red": str(inv3_red(spec)),
        "inv3_red_closed_form": str(red_closed_form(spec)),
        "invariant_generators": rep.quotient_dim,
        "odd_generators_vanishing": ["".join(map(str, v)) for v in rep.vanishing_outside_kernel],
        "e3_j_residues": cor,
        "e3_rbar_residues": lifted,
        "rbar_without_lift_witness": uncovered,
    }


def inv3_nr(spec: GroupSpec, p: int, *, evidence: bool = True) -> tuple[FiniteAbelianGroup, list[TraceStep]]:
    """Unramified degree-3 invariants at ``p``, with the chain of facts used.

    Always the trivial group on supported specs; raises on anything outside
    the families where the vanishing is established.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not a prime")
    shape = _check_nr_scope(spec)
    trace: list[TraceStep] = []
    zero = FiniteAbelianGroup.trivial()
    if p != 2:
        trace.append(TraceStep("odd-prime-vanishing",
                               "unramified degree-3 classes of BG vanish at odd primes",
                               {"p": p}))
        return zero, trace
    if shape == "d6a1":
        trace.append(TraceStep("d6xa1-unramified",
                               "every nontrivial invariant of the reductive envelope of H ramifies",
                               _d6a1_evidence(spec) if evidence else {"h_spec": spec.to_json()}))
        return zero, trace
    if spec.has_markers:
        trace.append(TraceStep("product-splitting",
                               "trivial-center factors with no unramified invariants split off",
                               {"removed": [t.value for t in spec.markers]}))
        spec = spec.without_markers()
    if not spec.components:
        return zero, trace
    n6 = sum(1 for t in spec.components if t == SimpleType.E6)
    n7 = len(spec.components) - n6
    if n6:
        split = coprime_split(spec, 2)
        trace.append(TraceStep("coprime-quotient",
                               "the 2-part is unchanged by dividing out the odd-order part of mu",
                               {"before": spec.to_json(), "after": split.to_json()}))
        spec = split
        trace.append(TraceStep("e6-simply-connected",
                               "simply connected E6 copies carry no unramified 2-primary invariants",
                               {"copies": n6}))
    if n7:
        idx = [i for i, t in enumerate(spec.components) if t == SimpleType.E7]
        offs = spec.character_offsets()
        gens = {tuple(g[offs[i]] for i in idx) for g in spec.R}
        e7 = GroupSpec(tuple(SimpleType.E7 for _ in idx), tuple(gens))
        h = h_spec_for_e7(e7)
        trace.append(TraceStep("e7-restriction-to-d6xa1",
                               "restriction of 2-primary invariants from E7^n/mu to (Spin12 x SL2)^n/mu is injective",
                               {"e7_spec": e7.to_json(), "h_spec": h.to_json()}))
        trace.append(TraceStep("d6xa1-unramified",
                               "every nontrivial invariant of the reductive envelope of H ramifies",
                               _d6a1_evidence(h) if evidence else {"h_spec": h.to_json()}))
    return zero, trace
