"""Cartan data, Weyl group action and orbit enumeration.

Simple types A1, D6, E6, E7 carry full lattice data in Bourbaki node
numbering. G2, F4 and E8 are markers: they have trivial center and are only
used to strip factors off a product, so every lattice operation rejects
them.

Weights are integer tuples in fundamental-weight coordinates. Node indices
in the public API are 1-based, as in the Dynkin diagram.
"""

from __future__ import annotations

import enum
import itertools
import os
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
import numpy as np

from .errors import UnsupportedTypeError
from .quadratic import QuadraticForm

if os.environ.get("COHINV_PURE_PYTHON") == "1":
    from . import _pykernels as _kernels
    KERNEL_BACKEND = "python"
else:
    try:
        from . import _ckernels as _kernels
        KERNEL_BACKEND = "compiled"
    except ImportError:  # extension not built
        from . import _pykernels as _kernels
        KERNEL_BACKEND = "python"

Weight = tuple[int, ...]


class SimpleType(enum.Enum):
    A1 = "A1"
    D6 = "D6"
    E6 = "E6"
    E7 = "E7"
    G2 = "G2"
    F4 = "F4"
    E8 = "E8"

    @property
    def rank(self) -> int:
        return _RANKS[self]

    @property
    def is_marker(self) -> bool:
        return self in _MARKERS

    @classmethod
    def parse(cls, name) -> "SimpleType":
        if isinstance(name, SimpleType):
            return name
        try:
            return cls(str(name).strip().upper())
        except ValueError:
            raise ValueError(f"unknown simple type {name!r}") from None

    def __str__(self) -> str:
        return self.value


_RANKS = {SimpleType.A1: 1, SimpleType.D6: 6, SimpleType.E6: 6, SimpleType.E7: 7,
          SimpleType.G2: 2, SimpleType.F4: 4, SimpleType.E8: 8}
_MARKERS = frozenset({SimpleType.G2, SimpleType.F4, SimpleType.E8})

# Bourbaki diagrams, 1-based nodes
_EDGES = {
    SimpleType.A1: (),
    SimpleType.D6: ((1, 2), (2, 3), (3, 4), (4, 5), (4, 6)),
    SimpleType.E6: ((1, 3), (3, 4), (4, 5), (5, 6), (2, 4)),
    SimpleType.E7: ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)),
}

_DEGREES = {
    SimpleType.A1: (2,),
    SimpleType.D6: (2, 4, 6, 8, 10, 6),
    SimpleType.E6: (2, 5, 6, 8, 9, 12),
    SimpleType.E7: (2, 6, 8, 10, 12, 14, 18),
}

# Center character data: per character (modulus, coefficient row), so that
# the character of w_j is coefficient[j] mod modulus.
CENTER_CHARACTERS = {
    SimpleType.A1: ((2, (1,)),),
    SimpleType.D6: ((2, (1, 0, 1, 0, 1, 0)), (2, (1, 0, 1, 0, 0, 1))),
    SimpleType.E6: ((3, (1, 0, 2, 0, 1, 2)),),
    SimpleType.E7: ((2, (0, 1, 0, 0, 1, 0, 1)),),
    SimpleType.G2: (),
    SimpleType.F4: (),
    SimpleType.E8: (),
}


def _require_lattice(t: SimpleType) -> SimpleType:
    t = SimpleType.parse(t)
    if t.is_marker:
        raise UnsupportedTypeError(f"{t} is a marker type without lattice data")
    return t


@lru_cache(maxsize=None)
def _cartan(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _EDGES[t]:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    return tuple(map(tuple, a))


def cartan_matrix(t) -> np.ndarray:
    """Cartan matrix in Bourbaki numbering; row i is alpha_i in the w-basis."""
    t = _require_lattice(t)
    out = np.array(_cartan(t), dtype=np.int64)
    out.setflags(write=False)
    return out


def dynkin_edges(t) -> tuple[tuple[int, int], ...]:
    return _EDGES[_require_lattice(t)]


def _check_weight(t: SimpleType, lam) -> Weight:
    lam = tuple(int(x) for x in lam)
    if len(lam) != t.rank:
        raise ValueError(f"weight {lam} has length {len(lam)}, {t} has rank {t.rank}")
    return lam


def fundamental_weight(t, j: int) -> Weight:
    t = _require_lattice(t)
    if not 1 <= j <= t.rank:
        raise IndexError(f"node {j} out of range for {t}")
    return tuple(int(k == j - 1) for k in range(t.rank))


def simple_reflection(t, i: int, lam) -> Weight:
    """s_i(lam) = lam - <lam, alpha_i^vee> alpha_i."""
    t = _require_lattice(t)
    lam = _check_weight(t, lam)
    if not 1 <= i <= t.rank:
        raise IndexError(f"node {i} out of range for {t}")
    c = lam[i - 1]
    row = _cartan(t)[i - 1]
    return tuple(x - c * a for x, a in zip(lam, row))


def reflection_matrix(t, i: int) -> list[list[int]]:
    """Rows are the images s_i(w_j) in the w-basis."""
    t = _require_lattice(t)
    return [list(simple_reflection(t, i, fundamental_weight(t, j))) for j in range(1, t.rank + 1)]


def weyl_order(t) -> int:
    """|W| as the product of the fundamental degrees."""
    return prod(_DEGREES[_require_lattice(t)])


def dominant(t, lam) -> Weight:
    t = _require_lattice(t)
    lam = _check_weight(t, lam)
    out = _kernels.dominant_batch(np.array(_cartan(t), dtype=np.int64),
                                  np.array([lam], dtype=np.int64))
    return tuple(int(x) for x in out[0])


def weyl_orbit(t, lam) -> tuple[Weight, ...]:
    """The W-orbit of ``lam``, sorted lexicographically."""
    t = _require_lattice(t)
    dom = dominant(t, lam)
    pts = _kernels.orbit_points(np.array(_cartan(t), dtype=np.int64), np.array(dom, dtype=np.int64))
    return tuple(sorted(tuple(int(x) for x in row) for row in pts))


def _subdiagram_weyl_order(t: SimpleType, nodes: frozenset[int]) -> int:
    # connected subdiagrams of simply-laced trees: A_k, D_k or E_k
    adj = {v: set() for v in nodes}
    for i, j in _EDGES[t]:
        if i in nodes and j in nodes:
            adj[i].add(j)
            adj[j].add(i)
    total = 1
    seen: set[int] = set()
    for start in sorted(nodes):
        if start in seen:
            continue
        comp, todo = set(), [start]
        while todo:
            v = todo.pop()
            if v not in comp:
                comp.add(v)
                todo.extend(adj[v] - comp)
        seen |= comp
        k = len(comp)
        branch = [v for v in comp if len(adj[v]) == 3]
        if not branch:
            total *= factorial(k + 1)
            continue
        (b,) = branch
        arms = []
        for nb in adj[b]:
            length, prev, cur = 1, b, nb
            while True:
                nxt = [u for u in adj[cur] if u != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            total *= 2 ** (k - 1) * factorial(k)
        else:
            total *= {(1, 2, 2): 51840, (1, 2, 3): 2903040, (1, 2, 4): 696729600}[tuple(arms)]
    return total


@lru_cache(maxsize=None)
def _stabilizer_order(t: SimpleType, zeros: frozenset[int]) -> int:
    return _subdiagram_weyl_order(t, zeros)


def orbit_size(t, lam) -> int:
    """|W lam| from the parabolic stabilizer of the dominant representative."""
    t = _require_lattice(t)
    dom = dominant(t, lam)
    zeros = frozenset(i + 1 for i, x in enumerate(dom) if x == 0)
    return weyl_order(t) // _stabilizer_order(t, zeros)


def orbit_square_sum(t, lam) -> QuadraticForm:
    """sum of theta^2 over the W-orbit of ``lam``, as a quadratic form."""
    t = _require_lattice(t)
    dom = dominant(t, lam)
    _, acc = _kernels.orbit_stats(np.array(_cartan(t), dtype=np.int64), np.array(dom, dtype=np.int64))
    return QuadraticForm.from_gram(acc.tolist())


@lru_cache(maxsize=None)
def _inverse_cartan(t: SimpleType) -> tuple[tuple[Fraction, ...], ...]:
    a = [[Fraction(x) for x in row] for row in _cartan(t)]
    n = len(a)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def weight_norm(t, lam) -> Fraction:
    """(lam, lam) for the invariant form with roots of square length 2."""
    t = _require_lattice(t)
    lam = _check_weight(t, lam)
    inv = _inverse_cartan(t)
    return sum((lam[i] * inv[i][j] * lam[j] for i in range(t.rank) for j in range(t.rank)), Fraction(0))


def orbit_profile(t, lam) -> tuple[int, int]:
    """``(|W lam|, s)`` with ``sum_{theta in W lam} theta^2 = s * q``.

    Uses the averaging identity ``s = 2 |W lam| (lam, lam) / rank`` instead
    of enumerating the orbit.
    """
    t = _require_lattice(t)
    size = orbit_size(t, lam)
    s = Fraction(2 * size) * weight_norm(t, lam) / t.rank
    if s.denominator != 1:
        raise ArithmeticError(f"non-integral orbit coefficient {s} for {t} {lam}")
    return size, int(s)


def center_class(t, lam) -> tuple[int, ...]:
    """Image of ``lam`` in the character group of the center of type ``t``."""
    t = SimpleType.parse(t)
    lam = tuple(lam)
    return tuple(sum(c * x for c, x in zip(row, lam)) % m for m, row in CENTER_CHARACTERS[t])


@lru_cache(maxsize=None)
def box_profiles(t: SimpleType, bound: int) -> dict[tuple[int, ...], frozenset[tuple[int, int]]]:
    """Distinct orbit profiles of all weights with coefficients in [-bound, bound].

    Keyed by center class. The zero weight contributes the profile (1, 0).
    """
    t = _require_lattice(t)
    r = t.rank
    rng = range(-bound, bound + 1)
    box = np.array(list(itertools.product(rng, repeat=r)), dtype=np.int64)
    doms = _kernels.dominant_batch(np.array(_cartan(t), dtype=np.int64), box)
    out: dict[tuple[int, ...], set[tuple[int, int]]] = {}
    # one profile per distinct dominant weight; the class is W-invariant
    distinct = {tuple(row) for row in np.unique(doms, axis=0).tolist()}
    for d in distinct:
        cls = center_class(t, d)
        out.setdefault(cls, set()).add(orbit_profile(t, d))
    return {k: frozenset(v) for k, v in out.items()}
