"""Exact integer lattices: Hermite and Smith normal forms, quotients.

Matrices are lists of integer rows; lattices are spanned by rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rows = list[list[int]]


def _as_rows(rows: Iterable[Sequence[int]]) -> Rows:
    return [[int(x) for x in r] for r in rows]


def hnf(rows: Iterable[Sequence[int]], ncols: int | None = None) -> Rows:
    """Row Hermite normal form with zero rows removed.

    Pivots are positive and strictly move right; entries above a pivot lie
    in ``[0, pivot)``.
    """
    a = _as_rows(rows)
    if not a:
        return []
    n = len(a[0]) if ncols is None else ncols
    r = 0
    for c in range(n):
        # Euclid down column c among rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    f = a[i][c] // a[r][c]
                    if f:
                        ai, ar = a[i], a[r]
                        for k in range(c, n):
                            ai[k] -= f * ar[k]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            p = a[r][c]
            for i in range(r):
                f = a[i][c] // p
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r]]


def integer_kernel(rows: Sequence[Sequence[int]]) -> Rows:
    """Basis (in HNF) of ``{x in Z^m : x @ A = 0}`` for the ``m x n`` matrix ``A``."""
    a = _as_rows(rows)
    m = len(a)
    if m == 0:
        return []
    n = len(a[0])
    aug = [a[i] + [int(i == j) for j in range(m)] for i in range(m)]
    h = hnf(aug, n + m)
    return hnf([row[n:] for row in h if not any(row[:n])], m)


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, each dividing the next."""
    a = _as_rows(rows)
    a = [r for r in a if any(r)]
    if not a:
        return []
    m, n = len(a), len(a[0])
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    f = a[i][t] // p
                    a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    f = a[t][j] // p
                    for row in a:
                        row[j] -= f * row[t]
                    if a[t][j]:
                        clean = False
            if clean:
                # divisibility: fold a non-divisible entry into row t
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                  if a[i][j] and (i == t or j == t)]
            _, i, j = min(nz)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


@dataclass(frozen=True)
class IntegerLattice:
    """Sublattice of ``Z^dim`` stored by its row Hermite basis."""

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, dim: int, gens: Iterable[Sequence[int]]) -> "IntegerLattice":
        gens = _as_rows(gens)
        for g in gens:
            if len(g) != dim:
                raise ValueError(f"generator {g} does not have length {dim}")
        return cls(dim, tuple(map(tuple, hnf(gens, dim))))

    @classmethod
    def full(cls, dim: int) -> "IntegerLattice":
        return cls.diagonal([1] * dim)

    @classmethod
    def zero(cls, dim: int) -> "IntegerLattice":
        return cls(dim, ())

    @classmethod
    def diagonal(cls, ds: Sequence[int]) -> "IntegerLattice":
        n = len(ds)
        return cls.from_generators(n, [[d if i == j else 0 for j in range(n)] for i, d in enumerate(ds)])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def rows(self) -> Rows:
        return [list(r) for r in self.basis]

    def contains(self, v: Sequence[int]) -> bool:
        v = [int(x) for x in v]
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            if v[c] % row[c]:
                return False
            f = v[c] // row[c]
            v = [x - f * y for x, y in zip(v, row)]
        return not any(v)

    def coordinates(self, v: Sequence[int]) -> list[int]:
        """Coefficients of ``v`` in the Hermite basis; ValueError if not a member."""
        v = [int(x) for x in v]
        out = []
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            if v[c] % row[c]:
                raise ValueError(f"{v} is not in the lattice")
            f = v[c] // row[c]
            out.append(f)
            v = [x - f * y for x, y in zip(v, row)]
        if any(v):
            raise ValueError("vector is not in the lattice")
        return out

    def is_sublattice_of(self, other: "IntegerLattice") -> bool:
        return all(other.contains(r) for r in self.basis)

    def __add__(self, other: "IntegerLattice") -> "IntegerLattice":
        return IntegerLattice.from_generators(self.dim, list(self.basis) + list(other.basis))

    def __and__(self, other: "IntegerLattice") -> "IntegerLattice":
        """Intersection."""
        return self.intersect(other)

    def intersect(self, other: "IntegerLattice") -> "IntegerLattice":
        if not self.basis or not other.basis:
            return IntegerLattice.zero(self.dim)
        stacked = self.rows() + [[-x for x in r] for r in other.basis]
        ker = integer_kernel(stacked)
        k = self.rank
        gens = [[sum(x[i] * self.basis[i][c] for i in range(k)) for c in range(self.dim)] for x in ker]
        return IntegerLattice.from_generators(self.dim, gens)

    def congruence_sublattice(self, u: Sequence[int], modulus: int) -> "IntegerLattice":
        """``{v in self : u . v == 0 mod modulus}``."""
        vals = [sum(a * b for a, b in zip(u, row)) for row in self.basis]
        k = len(vals)
        if all(x % modulus == 0 for x in vals):
            return self
        aug = [[vals[i]] + [int(i == j) for j in range(k)] for i in range(k)]
        aug.append([modulus] + [0] * k)
        h = hnf(aug, k + 1)
        combos = [row[1:] for row in h if row[0] == 0]
        gens = [[sum(x[i] * self.basis[i][c] for i in range(k)) for c in range(self.dim)] for x in combos]
        return IntegerLattice.from_generators(self.dim, gens)

    def index_in(self, other: "IntegerLattice") -> int:
        return quotient_order(self, other)

    def scaled(self, c: int) -> "IntegerLattice":
        return IntegerLattice.from_generators(self.dim, [[c * x for x in r] for r in self.basis])

    def determinant(self) -> int:
        """Covolume of a full-rank lattice."""
        if self.rank != self.dim:
            raise ValueError("determinant needs a full-rank lattice")
        d = 1
        for i, row in enumerate(self.basis):
            d *= row[i]
        return d

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [list(r) for r in self.basis]}

    def __str__(self) -> str:
        if self.rank == self.dim and all(self.basis[i][j] == 0 for i in range(self.dim)
                                         for j in range(self.dim) if i != j):
            return " ⊕ ".join(f"{self.basis[i][i]}Z" if self.basis[i][i] != 1 else "Z"
                              for i in range(self.dim)) or "0"
        return "span" + str([list(r) for r in self.basis])


def quotient_invariants(sub: IntegerLattice, sup: IntegerLattice) -> list[int]:
    """Invariant factors (>1) of the finite group ``sup / sub``."""
    if sub.dim != sup.dim:
        raise ValueError("lattices live in different ambient spaces")
    if sub.rank != sup.rank:
        raise ValueError("quotient is infinite")
    coords = [sup.coordinates(r) for r in sub.basis]
    return [d for d in smith_invariants(coords) if d != 1]


def quotient_order(sub: IntegerLattice, sup: IntegerLattice) -> int:
    out = 1
    for d in quotient_invariants(sub, sup):
        out *= d
    return out


def rational_nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` over Q."""
    a = [[Fraction(x) for x in r] for r in rows]
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in piv_cols]
    out = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            x[pc] = -a[i][fc]
        out.append(x)
    return out


def primitive(v: Sequence[Fraction]) -> list[int]:
    """Clear denominators and divide out the content."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints
