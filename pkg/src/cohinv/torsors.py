"""Torsor data for (GL2)^n/mu and (Omega12 x GL2)^n/mu over the model field.

Brauer classes of the model field are degree-2 KClasses, so every Brauer
relation is GF(2) linear algebra. Quaternions keep their symbol pair since
the trace form is built from it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import InvalidTorsorError, UnsupportedShapeError
from .gfp import ModPSubgroup
from .lattice import GroupSpec, j_set_data, rbar_lift
from .wittmilnor import (FieldTower, KClass, SquareClass, WittClass, diag_form, e_n, in_I_power,
                         matrix_involution_trace_form, pfister, residue_last, symbol)

XYZ = FieldTower.of("x", "y", "z")


class UndefinedInvariantError(InvalidTorsorError):
    """The invariant is not defined for this spec (e.g. ``e3_j`` with j outside J1)."""


class WitnessUnavailable(Exception):
    """No ramification witness of the implemented shape exists for this vector."""


# -- quaternions and degree-12 algebras ----------------------------------------


@dataclass(frozen=True)
class Quaternion:
    a: SquareClass
    b: SquareClass

    def __post_init__(self):
        if self.a.tower != self.b.tower:
            raise ValueError("quaternion slots over different towers")

    @classmethod
    def split(cls, tower: FieldTower) -> "Quaternion":
        one = SquareClass(tower, 0)
        return cls(one, one)

    @classmethod
    def parse(cls, tower: FieldTower, pair) -> "Quaternion":
        a, b = pair
        return cls(tower.square_class(a), tower.square_class(b))

    @property
    def tower(self) -> FieldTower:
        return self.a.tower

    def brauer(self) -> KClass:
        return symbol(self.a, self.b)

    def trace_form(self) -> WittClass:
        return pfister(self.a, self.b)

    def is_split(self) -> bool:
        return self.brauer().is_zero()

    def __str__(self) -> str:
        return f"({self.a},{self.b})"

    def to_json(self) -> list:
        return [self.a.to_json(), self.b.to_json()]


@dataclass(frozen=True)
class SplitAdjoint:
    """``(M12(K), adjoint of psi)`` with ``psi`` a 12-dimensional form in I^3."""

    entries: tuple[SquareClass, ...]

    def __post_init__(self):
        if len(self.entries) != 12:
            raise InvalidTorsorError("psi must be 12-dimensional")
        if not in_I_power(self.psi, 3):
            raise InvalidTorsorError(f"psi = {self.psi} is not in I^3")

    @property
    def tower(self) -> FieldTower:
        return self.entries[0].tower

    @property
    def psi(self) -> WittClass:
        return diag_form(self.entries)

    @classmethod
    def from_pfister(cls, *classes: SquareClass) -> "SplitAdjoint":
        """The 3-fold Pfister form padded with two hyperbolic planes."""
        if len(classes) != 3:
            raise ValueError("need three slots")
        t = classes[0].tower
        diag = [SquareClass(t, 0)]
        for c in classes:
            diag = diag + [d * c for d in diag]
        return cls(tuple(diag + [SquareClass(t, 0)] * 4))

    @classmethod
    def hyperbolic(cls, tower: FieldTower) -> "SplitAdjoint":
        return cls(tuple(SquareClass(tower, 0) for _ in range(12)))

    def to_json(self) -> dict:
        return {"kind": "split_adjoint", "psi": [e.to_json() for e in self.entries]}


@dataclass(frozen=True)
class TensorTriple:
    """``(M3 ⊗ u ⊗ v, t ⊗ gamma ⊗ gamma)``."""

    u: Quaternion
    v: Quaternion

    @property
    def tower(self) -> FieldTower:
        return self.u.tower

    def to_json(self) -> dict:
        return {"kind": "tensor_triple", "u": self.u.to_json(), "v": self.v.to_json()}


@dataclass(frozen=True)
class Transpose:
    """``(M12(K), transpose)``."""

    tower: FieldTower

    def to_json(self) -> dict:
        return {"kind": "transpose"}


InvolutionAlgebra12 = Union[SplitAdjoint, TensorTriple, Transpose]


def clifford_pair(a: InvolutionAlgebra12) -> tuple[KClass, KClass]:
    """Brauer classes of the two components of the Clifford algebra."""
    if isinstance(a, TensorTriple):
        return a.u.brauer(), a.v.brauer()
    zero = KClass.zero(a.tower, 2)
    return zero, zero


def algebra_brauer(a: InvolutionAlgebra12) -> KClass:
    c1, c2 = clifford_pair(a)
    return c1 + c2


def t_plus(a: InvolutionAlgebra12) -> WittClass:
    """Trace form restricted to symmetric elements."""
    if isinstance(a, TensorTriple):
        return a.u.trace_form() + a.v.trace_form()
    if isinstance(a, Transpose):
        # 78 copies of <1>
        return matrix_involution_trace_form(a.tower)
    raise InvalidTorsorError("no trace-form formula for a general split adjoint involution")


# -- type A --------------------------------------------------------------------


@dataclass(frozen=True)
class TypeATorsor:
    tower: FieldTower
    quaternions: tuple[Quaternion, ...]
    R: ModPSubgroup

    def __post_init__(self):
        if self.R.p != 2 or self.R.dim != len(self.quaternions):
            raise ValueError("R must be a subgroup of (Z/2)^n with n the number of quaternions")

    @property
    def n(self) -> int:
        return len(self.quaternions)

    def to_json(self) -> dict:
        return {"tower": list(self.tower.names), "quaternions": [q.to_json() for q in self.quaternions],
                "R": self.R.to_json()}

    @classmethod
    def from_json(cls, doc: dict) -> "TypeATorsor":
        t = FieldTower(tuple(doc["tower"]))
        qs = tuple(Quaternion.parse(t, q) for q in doc["quaternions"])
        return cls(t, qs, ModPSubgroup.span(2, len(qs), doc.get("R", [])))


def _relation_sum(classes: Sequence[KClass], r: Sequence[int], tower: FieldTower) -> KClass:
    out = KClass.zero(tower, 2)
    for c, x in zip(classes, r):
        if x % 2:
            out = out + c
    return out


def validate_type_a(t: TypeATorsor) -> bool:
    br = [q.brauer() for q in t.quaternions]
    return all(_relation_sum(br, r, t.tower).is_zero() for r in t.R.rows)


def _witt_sum(forms: Sequence[WittClass], tower: FieldTower) -> WittClass:
    out = WittClass.zero(tower)
    for f in forms:
        out = out + f
    return out


def e3_r(t: TypeATorsor, r: Sequence[int]) -> KClass:
    if not t.R.contains(r):
        raise InvalidTorsorError(f"{list(r)} is not in R")
    form = _witt_sum([q.trace_form() for q, x in zip(t.quaternions, r) if x % 2], t.tower)
    if not in_I_power(form, 3):
        raise InvalidTorsorError("the selected trace forms do not sum into I^3; torsor relations fail")
    return e_n(form, 3)


def _candidates(tower: FieldTower) -> list[tuple[int, int]]:
    nz = range(1, 1 << tower.m)
    return [(a, b) for a in nz for b in nz if a < b] + [(0, 0)]


def witness_lemma22(r: Sequence[int], tower: FieldTower = XYZ) -> tuple[TypeATorsor, KClass]:
    """First assignment (lexicographic) valid for ``R = <r>`` whose ``e3[r]`` ramifies at the last variable."""
    r = [int(x) % 2 for x in r]
    support = [i for i, x in enumerate(r) if x]
    if len(support) < 3:
        raise ValueError("need at least three nonzero entries")
    cands = _candidates(tower)
    quat = {c: Quaternion(SquareClass(tower, c[0]), SquareClass(tower, c[1])) for c in cands}
    by_class: dict[frozenset, tuple[int, int]] = {}
    for c in cands:
        by_class.setdefault(quat[c].brauer().terms, c)
    R = ModPSubgroup.span(2, len(r), [r])
    for head in itertools.product(cands, repeat=len(support) - 1):
        need = KClass.zero(tower, 2)
        for c in head:
            need = need + quat[c].brauer()
        last = by_class.get(need.terms)
        if last is None:
            continue
        qs = [Quaternion.split(tower)] * len(r)
        for i, c in zip(support, head + (last,)):
            qs[i] = quat[c]
        t = TypeATorsor(tower, tuple(qs), R)
        res = residue_last(e3_r(t, r))
        if not res.is_zero():
            return t, res
    raise InvalidTorsorError(f"witness search exhausted for r={r}")


def subgroup_witness(R: ModPSubgroup, r: Sequence[int],
                     tower: FieldTower = XYZ) -> tuple[TypeATorsor, KClass]:
    """A torsor valid for all of ``R`` whose ``e3[r]`` ramifies.

    Uses ``Q_i = (x, y^{c_i} z^{d_i})`` with ``c, d`` in the annihilator of
    ``R``; then ``e3[r] = (#{i in supp r : c_i = d_i = 1} mod 2) x∧y∧z``. Raises
    WitnessUnavailable when the annihilator restricted to the support of
    ``r`` is totally isotropic, so no such pair exists.
    """
    if tower.m != 3:
        raise ValueError("subgroup_witness uses a three-variable tower")
    if not R.contains(r):
        raise ValueError(f"{list(r)} is not in R")
    support = [i for i, x in enumerate(r) if x % 2]
    ann = list(R.annihilator().elements())
    for c, d in itertools.product(ann, repeat=2):
        if sum(c[i] * d[i] for i in support) % 2 == 0:
            continue
        qs = []
        for ci, di in zip(c, d):
            if ci or di:
                qs.append(Quaternion(SquareClass(tower, 1), SquareClass(tower, 2 * ci + 4 * di)))
            else:
                qs.append(Quaternion.split(tower))
        t = TypeATorsor(tower, tuple(qs), R)
        res = residue_last(e3_r(t, r))
        if res.is_zero():
            raise AssertionError("subgroup witness lost its residue")
        return t, res
    raise WitnessUnavailable(f"e3[r] has no witness of this shape for r={list(r)}")


# -- (Omega12 x GL2)^n ------------------------------------------------------------


@dataclass(frozen=True)
class HComponent:
    algebra: InvolutionAlgebra12
    swap: bool
    quaternion: Quaternion

    def oriented_pair(self) -> tuple[KClass, KClass]:
        c1, c2 = clifford_pair(self.algebra)
        return (c2, c1) if self.swap else (c1, c2)

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(), "swap": self.swap, "quaternion": self.quaternion.to_json()}


@dataclass(frozen=True)
class HTorsor:
    tower: FieldTower
    components: tuple[HComponent, ...]
    spec: GroupSpec

    def __post_init__(self):
        if not self.spec.is_d6a1():
            raise UnsupportedShapeError("HTorsor needs a (D6 x A1)^n spec")
        if len(self.components) != len(self.spec.components) // 2:
            raise ValueError("one component per D6 x A1 factor")

    @property
    def n(self) -> int:
        return len(self.components)

    def brauer_vector(self) -> list[KClass]:
        out = []
        for c in self.components:
            out.extend(c.oriented_pair())
            out.append(c.quaternion.brauer())
        return out

    def to_json(self) -> dict:
        return {"tower": list(self.tower.names), "components": [c.to_json() for c in self.components],
                "spec": self.spec.to_json()}

    @classmethod
    def from_json(cls, doc: dict) -> "HTorsor":
        t = FieldTower(tuple(doc["tower"]))
        comps = []
        for c in doc["components"]:
            a = c["algebra"]
            kind = a["kind"]
            if kind == "split_adjoint":
                alg = SplitAdjoint(tuple(t.square_class(e) for e in a["psi"]))
            elif kind == "tensor_triple":
                alg = TensorTriple(Quaternion.parse(t, a["u"]), Quaternion.parse(t, a["v"]))
            elif kind == "transpose":
                alg = Transpose(t)
            else:
                raise ValueError(f"unknown algebra kind {kind!r}")
            comps.append(HComponent(alg, bool(c["swap"]), Quaternion.parse(t, c["quaternion"])))
        return cls(t, tuple(comps), GroupSpec.from_json(doc["spec"]))


def validate_h(t: HTorsor) -> bool:
    br = t.brauer_vector()
    return all(_relation_sum(br, r, t.tower).is_zero() for r in t.spec.R)


def e3_j(t: HTorsor, j: int) -> KClass:
    """``e3(psi_j)`` for ``j`` in J1 (1-based)."""
    js = j_set_data(t.spec)
    if j not in js.J1:
        raise UndefinedInvariantError(f"e3_j needs j in J1 = {list(js.J1)}, got {j}")
    a = t.components[j - 1].algebra
    if not isinstance(a, SplitAdjoint):
        raise InvalidTorsorError(f"component {j} must be given as a split adjoint involution")
    return e_n(a.psi, 3)


def _in_rbar1(spec: GroupSpec, rb: Sequence[int]) -> bool:
    return j_set_data(spec).R_bar1.contains(rb)


def phi_form(t: HTorsor, rb: Sequence[int]) -> WittClass:
    rb = [int(x) % 2 for x in rb]
    if len(rb) != 2 * t.n:
        raise ValueError(f"rbar must have length {2 * t.n}")
    if not _in_rbar1(t.spec, rb):
        raise InvalidTorsorError(f"{rb} is not in Rbar_1")
    out = WittClass.zero(t.tower)
    for j, c in enumerate(t.components):
        if rb[2 * j]:
            out = out + t_plus(c.algebra)
        if rb[2 * j + 1]:
            out = out + c.quaternion.trace_form()
    if not in_I_power(out, 3):
        raise InvalidTorsorError(f"phi[{rb}] = {out} is not in I^3")
    return out


def e3_rbar(t: HTorsor, rb: Sequence[int]) -> KClass:
    return e_n(phi_form(t, rb), 3)


def w2_of_phi(t: HTorsor, rb: Sequence[int]) -> KClass:
    """Degree-2 part of the unchecked Witt sum; zero on valid torsors."""
    out = WittClass.zero(t.tower)
    for j, c in enumerate(t.components):
        if rb[2 * j] % 2:
            out = out + t_plus(c.algebra)
        if rb[2 * j + 1] % 2:
            out = out + c.quaternion.trace_form()
    return out.homogeneous_part(2)


def tensor_triple_lift(rho: TypeATorsor, spec: GroupSpec) -> HTorsor:
    """``A_j = M3 ⊗ Q_{3j-2} ⊗ Q_{3j-1}`` and ``Q_j`` taken from ``Q_{3j}``."""
    n = len(spec.components) // 2
    if rho.n != 3 * n:
        raise ValueError("type-A torsor must have 3n quaternions")
    qs = rho.quaternions
    comps = tuple(HComponent(TensorTriple(qs[3 * j], qs[3 * j + 1]), False, qs[3 * j + 2]) for j in range(n))
    return HTorsor(rho.tower, comps, spec)


def _lift_vector(rb: Sequence[int]) -> list[int]:
    n = len(rb) // 2
    out = [0] * (3 * n)
    for i, row in enumerate(rbar_lift(n)):
        if rb[i] % 2:
            out = [(a + b) % 2 for a, b in zip(out, row)]
    return out


def rbar_witness(spec: GroupSpec, rb: Sequence[int]) -> tuple[TypeATorsor, HTorsor, KClass]:
    """Ramification witness for ``e3[rbar]`` through the tensor-triple lift."""
    rb = [int(x) % 2 for x in rb]
    if not _in_rbar1(spec, rb):
        raise InvalidTorsorError(f"{rb} is not in Rbar_1")
    r = _lift_vector(rb)
    _, sub = spec.subgroup(2)
    rho, res = subgroup_witness(sub, r)
    eta = tensor_triple_lift(rho, spec)
    if not validate_h(eta):
        raise AssertionError("tensor-triple lift of a valid torsor is invalid")
    if e3_rbar(eta, rb) != e3_r(rho, r):
        raise AssertionError("e3[rbar] of the lift differs from e3[r]")
    return rho, eta, res


def witness_cor43(spec: GroupSpec, j: int) -> tuple[HTorsor, KClass]:
    """``psi_j = <<x,y,z>> ⊥ h``, all other algebras transpose, all quaternions split."""
    js = j_set_data(spec)
    if j not in js.J1:
        raise UndefinedInvariantError(f"j must lie in J1 = {list(js.J1)}, got {j}")
    t = XYZ
    x, y, z = (t.var(v) for v in t.names)
    comps = []
    for k in range(1, js.n + 1):
        alg = SplitAdjoint.from_pfister(x, y, z) if k == j else Transpose(t)
        comps.append(HComponent(alg, False, Quaternion.split(t)))
    eta = HTorsor(t, tuple(comps), spec)
    if not validate_h(eta):
        raise AssertionError("single-index witness torsor is invalid")
    res = residue_last(e3_j(eta, j))
    base = t.drop_last()
    if res != symbol(base.var("x"), base.var("y")):
        raise AssertionError(f"expected residue x∧y, got {res}")
    return eta, res


# -- random torsors ---------------------------------------------------------------


def _presentations(tower: FieldTower) -> dict[frozenset, list[tuple[int, int]]]:
    out: dict[frozenset, list[tuple[int, int]]] = {}
    for a in range(1 << tower.m):
        for b in range(1 << tower.m):
            q = Quaternion(SquareClass(tower, a), SquareClass(tower, b))
            out.setdefault(q.brauer().terms, []).append((a, b))
    return out


def _random_brauer_vector(R: ModPSubgroup, tower: FieldTower, rng: random.Random) -> list[frozenset]:
    """Random element of ``ann(R) ⊗ Λ²``: coordinates are degree-2 term sets."""
    ann = R.annihilator()
    basis2 = [s for s in range(1 << tower.m) if bin(s).count("1") == 2]
    vec = [set() for _ in range(R.dim)]
    for s in basis2:
        coeff = [0] * R.dim
        for row in ann.rows:
            if rng.random() < 0.5:
                coeff = [(a + b) % 2 for a, b in zip(coeff, row)]
        for i, c in enumerate(coeff):
            if c:
                vec[i] ^= {s}
    return [frozenset(v) for v in vec]


def _decomposable_vector(R: ModPSubgroup, tower: FieldTower, pres, rng: random.Random) -> list[frozenset]:
    # over more than three variables a degree-2 class need not be a single symbol
    for _ in range(1000):
        vec = _random_brauer_vector(R, tower, rng)
        if all(c in pres for c in vec):
            return vec
    raise ValueError("could not draw Brauer classes that are all quaternion classes")


def _random_quaternion(cls: frozenset, pres, tower: FieldTower, rng: random.Random) -> Quaternion:
    a, b = rng.choice(pres[cls])
    return Quaternion(SquareClass(tower, a), SquareClass(tower, b))


def random_type_a(R: ModPSubgroup, rng: random.Random, tower: FieldTower | None = None) -> TypeATorsor:
    tower = tower or XYZ
    pres = _presentations(tower)
    vec = _decomposable_vector(R, tower, pres, rng)
    qs = tuple(_random_quaternion(c, pres, tower, rng) for c in vec)
    return TypeATorsor(tower, qs, R)


def random_h_torsor(spec: GroupSpec, rng: random.Random, tower: FieldTower | None = None) -> HTorsor:
    """Random valid torsor mixing all three algebra variants and both orientations.

    Split adjoint algebras only appear at indices in J1, where e3[rbar] never
    needs their trace form, so every e3[rbar] is defined on the result.
    """
    tower = tower or XYZ
    J1 = set(j_set_data(spec).J1)
    _, sub = spec.subgroup(2)
    pres = _presentations(tower)
    vec = _decomposable_vector(sub, tower, pres, rng)
    zero = frozenset()
    comps = []
    for j in range(len(vec) // 3):
        c1, c2, q = vec[3 * j:3 * j + 3]
        swap = rng.random() < 0.5
        if c1 == zero and c2 == zero and rng.random() < 0.5:
            if j + 1 not in J1 or rng.random() < 0.5:
                alg = Transpose(tower)
            else:
                slots = [SquareClass(tower, rng.randrange(1 << tower.m)) for _ in range(3)]
                alg = SplitAdjoint.from_pfister(*slots) if rng.random() < 0.8 else SplitAdjoint.hyperbolic(tower)
        else:
            u, v = (c2, c1) if swap else (c1, c2)
            alg = TensorTriple(_random_quaternion(u, pres, tower, rng), _random_quaternion(v, pres, tower, rng))
        comps.append(HComponent(alg, swap, _random_quaternion(q, pres, tower, rng)))
    return HTorsor(tower, tuple(comps), spec)


# -- surjection bookkeeping --------------------------------------------------------


@dataclass(frozen=True)
class SurjectionReport:
    n: int
    J1: tuple[int, ...]
    R_bar1: ModPSubgroup
    kernel: ModPSubgroup
    quotient_dim: int
    quotient_basis_rbar: tuple[tuple[int, ...], ...]
    closed_form_dim: int
    # odd generators ebar_{2j-1}, j in J2 \ J1: in Rbar_1 and outside the kernel,
    # yet e3[rbar] vanishes on every torsor because Q(G) already contains 2 q_{2j-1}
    vanishing_outside_kernel: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def quotient_order(self) -> int:
        return 2 ** self.quotient_dim

    def to_json(self) -> dict:
        return {
            "n": self.n, "J1": list(self.J1), "R_bar1": self.R_bar1.to_json(),
            "kernel": self.kernel.to_json(), "quotient_dim": self.quotient_dim,
            "quotient_basis_rbar": [list(v) for v in self.quotient_basis_rbar],
            "closed_form_dim": self.closed_form_dim,
            "vanishing_outside_kernel": [list(v) for v in self.vanishing_outside_kernel],
        }


def _ebar(n: int, *idx: int) -> list[int]:
    v = [0] * (2 * n)
    for i in idx:
        v[i] = 1
    return v


def surjection_report(spec: GroupSpec) -> SurjectionReport:
    js = j_set_data(spec)
    n = js.n
    rb1 = js.R_bar1
    kgens = [_ebar(n, 2 * j + 1) for j in range(n) if rb1.contains(_ebar(n, 2 * j + 1))]
    singles = {j for j in range(n) if rb1.contains(_ebar(n, 2 * j + 1))}
    for p in range(n):
        for q in range(p + 1, n):
            if p in singles or q in singles:
                continue
            if rb1.contains(_ebar(n, 2 * p + 1, 2 * q + 1)):
                kgens.append(_ebar(n, 2 * p + 1, 2 * q + 1))
    kernel = ModPSubgroup.span(2, 2 * n, kgens)
    # complement of the kernel inside Rbar_1
    basis, cur = [], kernel
    for row in rb1.rows:
        if not cur.contains(row):
            basis.append(tuple(row))
            cur = cur + ModPSubgroup.span(2, 2 * n, [row])
    qdim = js.l1 + rb1.rank - kernel.rank
    closed = js.m + js.l1 - js.l2
    if qdim != closed:
        raise AssertionError(f"surjection quotient has dimension {qdim}, closed form gives {closed}")
    vanish = tuple(tuple(_ebar(n, 2 * (j - 1))) for j in js.J2 if j not in js.J1)
    return SurjectionReport(n, js.J1, rb1, kernel, qdim, tuple(basis), closed, vanish)
