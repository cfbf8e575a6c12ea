"""Group specs, center characters, the lattice T* and relation-subgroup combinatorics.

A group is ``G~ / mu`` where ``G~`` is a product of simply connected simple
groups and ``mu`` is central. It is specified by the subgroup ``R`` of the
character group ``Z`` of the center of ``G~`` with ``Z / R = mu^*``.
``Z`` has one coordinate per center character (see
``rootdata.CENTER_CHARACTERS``), numbered e1, e2, ... in component order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import lcm
from typing import Any, Iterable, Sequence

from .errors import SpecError, UnsupportedShapeError, UnsupportedTypeError
from .gfp import ModPSubgroup
from .intlat import IntegerLattice
from .rootdata import CENTER_CHARACTERS, SimpleType, cartan_matrix, center_class

# weight whose center class is the unit vector of each character
_CHARACTER_LIFTS = {
    SimpleType.A1: ((1,),),
    SimpleType.D6: ((0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)),
    SimpleType.E6: ((1, 0, 0, 0, 0, 0),),
    SimpleType.E7: ((0, 1, 0, 0, 0, 0, 0),),
}


@dataclass(frozen=True)
class GroupSpec:
    """Components plus the relation subgroup ``R``, kept in canonical form.

    ``R`` is stored as generators that are, per prime, the reduced row
    echelon basis of the projection to that prime's coordinates. Two specs
    describe the same group iff they compare equal.
    """

    components: tuple[SimpleType, ...]
    R: tuple[tuple[int, ...], ...] = ()
    _subgroups: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        comps = tuple(SimpleType.parse(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        mods = self.moduli
        gens = []
        for g in self.R:
            g = tuple(int(x) for x in g)
            if len(g) != len(mods):
                raise ValueError(f"generator {g} has length {len(g)}, expected {len(mods)}")
            gens.append(tuple(x % m for x, m in zip(g, mods)))
        subs = {}
        for p in sorted(set(mods)):
            idx = [i for i, m in enumerate(mods) if m == p]
            subs[p] = (idx, ModPSubgroup.span(p, len(idx), [[g[i] for i in idx] for g in gens]))
        canon = []
        for p, (idx, sub) in subs.items():
            for row in sub.rows:
                v = [0] * len(mods)
                for i, x in zip(idx, row):
                    v[i] = x
                canon.append(tuple(v))
        object.__setattr__(self, "R", tuple(canon))
        object.__setattr__(self, "_subgroups", subs)

    # -- character group ------------------------------------------------

    @cached_property
    def moduli(self) -> tuple[int, ...]:
        return tuple(m for t in self.components for m, _ in CENTER_CHARACTERS[t])

    @property
    def n_characters(self) -> int:
        return len(self.moduli)

    @cached_property
    def character_owner(self) -> tuple[int, ...]:
        """Component index of each character."""
        return tuple(i for i, t in enumerate(self.components) for _ in CENTER_CHARACTERS[t])

    def character_offsets(self) -> list[int]:
        out, k = [], 0
        for t in self.components:
            out.append(k)
            k += len(CENTER_CHARACTERS[t])
        return out

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.moduli)))

    def subgroup(self, p: int) -> tuple[list[int], ModPSubgroup]:
        """Coordinates with modulus ``p`` and the p-part of ``R`` on them."""
        if p not in self._subgroups:
            return [], ModPSubgroup.span(p, 0)
        return self._subgroups[p]

    def r_contains(self, v: Sequence[int]) -> bool:
        v = [int(x) % m for x, m in zip(v, self.moduli)]
        for p, (idx, sub) in self._subgroups.items():
            if not sub.contains([v[i] for i in idx]):
                return False
        return True

    def unit(self, i: int) -> tuple[int, ...]:
        """The character e_{i+1} (0-based ``i``)."""
        return tuple(int(k == i) for k in range(self.n_characters))

    @property
    def r_order(self) -> int:
        out = 1
        for p, (_, sub) in self._subgroups.items():
            out *= len(sub)
        return out

    @property
    def z_order(self) -> int:
        out = 1
        for m in self.moduli:
            out *= m
        return out

    @property
    def mu_order(self) -> int:
        return self.z_order // self.r_order

    # -- shape predicates -------------------------------------------------

    @property
    def markers(self) -> tuple[SimpleType, ...]:
        return tuple(t for t in self.components if t.is_marker)

    @property
    def has_markers(self) -> bool:
        return bool(self.markers)

    def without_markers(self) -> "GroupSpec":
        # markers have no characters, so R carries over unchanged
        return GroupSpec(tuple(t for t in self.components if not t.is_marker), self.R)

    def is_homogeneous(self, t: SimpleType) -> bool:
        return bool(self.components) and all(c == t for c in self.components)

    def is_d6a1(self) -> bool:
        c = self.components
        return (bool(c) and len(c) % 2 == 0
                and all(c[k] == (SimpleType.D6 if k % 2 == 0 else SimpleType.A1) for k in range(len(c))))

    def require_lattice(self) -> None:
        if self.has_markers:
            raise UnsupportedTypeError(f"marker component {self.markers[0]} has no lattice data")

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(t.rank for t in self.components)

    # -- (de)serialization ------------------------------------------------

    @classmethod
    def from_json(cls, doc: Any) -> "GroupSpec":
        if isinstance(doc, (str, bytes)):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise SpecError(f"invalid JSON: {exc.msg}", "") from None
        if not isinstance(doc, dict):
            raise SpecError("spec must be a JSON object", "")
        extra = sorted(set(doc) - {"components", "R"})
        if extra:
            raise SpecError(f"unknown key {extra[0]!r}", f"/{extra[0]}")
        comps = doc.get("components")
        if not isinstance(comps, list):
            raise SpecError("'components' must be a list of type names", "/components")
        types = []
        for i, c in enumerate(comps):
            try:
                if not isinstance(c, str):
                    raise ValueError
                types.append(SimpleType.parse(c))
            except ValueError:
                raise SpecError(f"unknown simple type {c!r}", f"/components/{i}") from None
        mods = tuple(m for t in types for m, _ in CENTER_CHARACTERS[t])
        rel = doc.get("R", [])
        if not isinstance(rel, list):
            raise SpecError("'R' must be a list of integer vectors", "/R")
        gens = []
        for i, g in enumerate(rel):
            if not isinstance(g, list):
                raise SpecError("generator must be a list of integers", f"/R/{i}")
            if len(g) != len(mods):
                raise SpecError(f"generator has length {len(g)}, expected {len(mods)}", f"/R/{i}")
            for k, x in enumerate(g):
                if isinstance(x, bool) or not isinstance(x, int):
                    raise SpecError("entries must be integers", f"/R/{i}/{k}")
            gens.append(tuple(g))
        return cls(tuple(types), tuple(gens))

    def to_json(self) -> dict:
        return {"components": [t.value for t in self.components], "R": [list(g) for g in self.R]}

    def describe_mu(self) -> str:
        """Isomorphism type of mu (dual of Z/R) as a product of mu_p's."""
        parts = []
        for p in self.primes:
            idx, sub = self.subgroup(p)
            k = len(idx) - sub.rank
            if k:
                parts.append(f"mu{p}" + (f"^{k}" if k > 1 else ""))
        return " x ".join(parts) or "1"

    def __str__(self) -> str:
        comps = " x ".join(t.value for t in self.components) or "1"
        return f"{comps} / <{self.describe_mu()}>  R={[list(g) for g in self.R]}"


def simply_connected(components: Iterable) -> GroupSpec:
    comps = tuple(SimpleType.parse(c) for c in components)
    mods = [m for t in comps for m, _ in CENTER_CHARACTERS[t]]
    return GroupSpec(comps, tuple(tuple(int(i == j) for j in range(len(mods))) for i in range(len(mods))))


def adjoint(components: Iterable) -> GroupSpec:
    return GroupSpec(tuple(SimpleType.parse(c) for c in components), ())


# -- characters and the map to the center ------------------------------


def center_lattice(spec: GroupSpec) -> list[tuple[str, int]]:
    return [(f"e{i + 1}", m) for i, m in enumerate(spec.moduli)]


def split_weight(spec: GroupSpec, lam) -> list[tuple[int, ...]]:
    """Accept a flat coordinate vector or one vector per component."""
    spec.require_lattice()
    lam = list(lam)
    if lam and all(isinstance(x, (list, tuple)) for x in lam):
        parts = [tuple(int(y) for y in x) for x in lam]
    else:
        flat = [int(x) for x in lam]
        if len(flat) != sum(spec.ranks):
            raise ValueError(f"weight has length {len(flat)}, expected {sum(spec.ranks)}")
        parts, k = [], 0
        for r in spec.ranks:
            parts.append(tuple(flat[k:k + r]))
            k += r
    if len(parts) != len(spec.components):
        raise ValueError("weight does not match the components")
    for t, x in zip(spec.components, parts):
        if len(x) != t.rank:
            raise ValueError(f"{t} weight {x} has wrong length")
    return parts


def phi(spec: GroupSpec, lam) -> tuple[int, ...]:
    """Image of ``lam`` in Z under restriction to the center."""
    out: list[int] = []
    for t, x in zip(spec.components, split_weight(spec, lam)):
        out.extend(center_class(t, x))
    return tuple(out)


def in_t_star(spec: GroupSpec, lam) -> bool:
    return spec.r_contains(phi(spec, lam))


def order_in_quotient(spec: GroupSpec, lam) -> int:
    """Order of the image of ``lam`` in Lambda / T*."""
    v = phi(spec, lam)
    mods = spec.moduli
    top = lcm(*mods) if mods else 1
    for k in range(1, top + 1):
        if spec.r_contains([k * x % m for x, m in zip(v, mods)]):
            return k
    raise AssertionError("unreachable: top * v is zero")


def fundamental_weight_orders(spec: GroupSpec) -> list[list[int]]:
    """``[[|w_{i,j}| for j] for i]`` in Lambda / T*."""
    spec.require_lattice()
    out = []
    for i, t in enumerate(spec.components):
        row = []
        for j in range(t.rank):
            lam = [tuple(0 for _ in range(s.rank)) for s in spec.components]
            lam[i] = tuple(int(k == j) for k in range(t.rank))
            row.append(order_in_quotient(spec, lam))
        out.append(row)
    return out


def character_lift(spec: GroupSpec, v: Sequence[int]) -> tuple[int, ...]:
    """A weight (flat coordinates) whose image in Z is ``v``."""
    spec.require_lattice()
    out: list[int] = []
    k = 0
    for t in spec.components:
        w = [0] * t.rank
        for lift in _CHARACTER_LIFTS[t]:
            c = int(v[k])
            w = [a + c * b for a, b in zip(w, lift)]
            k += 1
        out.extend(w)
    return tuple(out)


@lru_cache(maxsize=None)
def _t_star(spec: GroupSpec) -> IntegerLattice:
    spec.require_lattice()
    n = sum(spec.ranks)
    gens = []
    off = 0
    for t in spec.components:
        for row in cartan_matrix(t).tolist():
            v = [0] * n
            v[off:off + t.rank] = row
            gens.append(v)
        off += t.rank
    for g in spec.R:
        gens.append(list(character_lift(spec, g)))
    lat = IntegerLattice.from_generators(n, gens)
    if lat.determinant() != spec.mu_order:
        raise AssertionError("T* index does not match |Z/R|")
    return lat


def t_star_lattice(spec: GroupSpec) -> IntegerLattice:
    return _t_star(spec)


def t_star_basis(spec: GroupSpec) -> list[list[int]]:
    """Hermite basis of T* in flat fundamental-weight coordinates."""
    return _t_star(spec).rows()


# -- prime splitting ------------------------------------------------------


def coprime_split(spec: GroupSpec, p: int) -> GroupSpec:
    """Replace mu by its p-primary part.

    Characters of modulus prime to p become unconstrained (all in R); the
    p-coordinates keep the projection of R.
    """
    gens = list(spec.R)
    for i, m in enumerate(spec.moduli):
        if m % p:
            gens.append(spec.unit(i))
    return GroupSpec(spec.components, tuple(gens))


# -- (D6 x A1)^n combinatorics ---------------------------------------------


def _require_d6a1(spec: GroupSpec) -> int:
    if not spec.is_d6a1():
        raise UnsupportedShapeError("expected components D6, A1, D6, A1, ...")
    return len(spec.components) // 2


def rbar_lift(n: int) -> list[list[int]]:
    """Images of the basis vectors of Zbar in Z: e_{2j-1} -> e_{3j-2}+e_{3j-1}, e_{2j} -> e_{3j}."""
    out = []
    for j in range(n):
        a = [0] * (3 * n)
        a[3 * j] = a[3 * j + 1] = 1
        b = [0] * (3 * n)
        b[3 * j + 2] = 1
        out += [a, b]
    return out


def r_bar(spec: GroupSpec) -> ModPSubgroup:
    n = _require_d6a1(spec)
    _, sub = spec.subgroup(2)
    return sub.preimage(rbar_lift(n), 2 * n)


@dataclass(frozen=True)
class JSetData:
    n: int
    J1: tuple[int, ...]
    J2: tuple[int, ...]
    J3: tuple[int, ...]
    l1: int
    l2: int
    l3: int
    m: int
    R_bar: ModPSubgroup
    R_bar1: ModPSubgroup
    l2_over_rbar1: int
    # pairs (p, q) with e_2p + e_2q in Rbar and neither single in Rbar, 1-based
    even_pairs: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "J1": list(self.J1), "J2": list(self.J2), "J3": list(self.J3),
            "l1": self.l1, "l2": self.l2, "l3": self.l3, "m": self.m,
            "l2_over_rbar1": self.l2_over_rbar1,
            "R_bar": self.R_bar.to_json(), "R_bar1": self.R_bar1.to_json(),
        }


def _l2(n: int, sub: ModPSubgroup) -> tuple[int, tuple[tuple[int, int], ...]]:
    def ebar(*idx):
        v = [0] * (2 * n)
        for i in idx:
            v[i] = 1
        return v

    gens, pairs = [], []
    singles = [j for j in range(n) if sub.contains(ebar(2 * j + 1))]
    gens += [ebar(2 * j + 1) for j in singles]
    for a in range(n):
        for b in range(a + 1, n):
            if a in singles or b in singles:
                continue
            if sub.contains(ebar(2 * a + 1, 2 * b + 1)):
                gens.append(ebar(2 * a + 1, 2 * b + 1))
                pairs.append((a + 1, b + 1))
    return ModPSubgroup.span(2, 2 * n, gens).rank, tuple(pairs)


def j_set_data(spec: GroupSpec) -> JSetData:
    n = _require_d6a1(spec)
    e = spec.unit
    J1 = tuple(j + 1 for j in range(n) if spec.r_contains(e(3 * j)) and spec.r_contains(e(3 * j + 1)))
    J2 = tuple(j + 1 for j in range(n)
               if spec.r_contains([a + b for a, b in zip(e(3 * j), e(3 * j + 1))]))
    J3 = tuple(j + 1 for j in range(n) if spec.r_contains(e(3 * j + 2)))
    rb = r_bar(spec)
    # Zbar_1 drops the odd coordinates of J1
    z1_gens = [[int(k == i) for k in range(2 * n)] for i in range(2 * n)
               if not (i % 2 == 0 and (i // 2 + 1) in J1)]
    rb1 = rb & ModPSubgroup.span(2, 2 * n, z1_gens)
    l2, pairs = _l2(n, rb)
    l2b, _ = _l2(n, rb1)
    return JSetData(n, J1, J2, J3, len(J1), l2, len(J3), rb1.rank, rb, rb1, l2b, pairs)


def h_spec_for_e7(spec: GroupSpec) -> GroupSpec:
    """The (D6 x A1)^n spec of the subgroup (Spin12 x SL2)^n / ... inside E7^n / mu.

    The E7 character e_j becomes e_{3j-2}; the characters e_{3j-1} + e_{3j}
    vanish on the kernel of Spin12 x SL2 -> E7 and so always lie in R.
    """
    if not spec.is_homogeneous(SimpleType.E7):
        raise UnsupportedShapeError("expected an E7^n spec")
    n = len(spec.components)
    gens = []
    for g in spec.R:
        v = [0] * (3 * n)
        for j, a in enumerate(g):
            v[3 * j] = a
        gens.append(v)
    for j in range(n):
        v = [0] * (3 * n)
        v[3 * j + 1] = v[3 * j + 2] = 1
        gens.append(v)
    return GroupSpec(tuple([SimpleType.D6, SimpleType.A1] * n), tuple(gens))
