"""Subspaces of GF(p)^n in reduced row-echelon form."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def rref(rows: Iterable[Sequence[int]], p: int, n: int) -> tuple[tuple[int, ...], ...]:
    a = [[int(x) % p for x in r] for r in rows]
    for r in a:
        if len(r) != n:
            raise ValueError(f"vector {r} does not have length {n}")
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return tuple(tuple(row) for row in a[:r])


@dataclass(frozen=True)
class ModPSubgroup:
    """A subgroup of ``(Z/p)^dim``; ``rows`` is its canonical RREF basis."""

    p: int
    dim: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, p: int, dim: int, gens: Iterable[Sequence[int]] = ()) -> "ModPSubgroup":
        return cls(p, dim, rref(gens, p, dim))

    @classmethod
    def full(cls, p: int, dim: int) -> "ModPSubgroup":
        return cls.span(p, dim, [[int(i == j) for j in range(dim)] for i in range(dim)])

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return self.p ** self.rank

    def contains(self, v: Sequence[int]) -> bool:
        v = [int(x) % self.p for x in v]
        for row in self.rows:
            c = next(i for i, x in enumerate(row) if x)
            f = v[c]
            if f:
                v = [(x - f * y) % self.p for x, y in zip(v, row)]
        return not any(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __add__(self, other: "ModPSubgroup") -> "ModPSubgroup":
        return ModPSubgroup.span(self.p, self.dim, self.rows + other.rows)

    def annihilator(self) -> "ModPSubgroup":
        """``{x : x . r = 0 for all rows r}``."""
        p, n = self.p, self.dim
        pivots = [next(i for i, x in enumerate(r) if x) for r in self.rows]
        free = [c for c in range(n) if c not in pivots]
        gens = []
        for fc in free:
            x = [0] * n
            x[fc] = 1
            for row, pc in zip(self.rows, pivots):
                x[pc] = -row[fc] % p
            gens.append(x)
        return ModPSubgroup.span(p, n, gens)

    def intersect(self, other: "ModPSubgroup") -> "ModPSubgroup":
        return (self.annihilator() + other.annihilator()).annihilator()

    def __and__(self, other: "ModPSubgroup") -> "ModPSubgroup":
        return self.intersect(other)

    def elements(self) -> Iterator[tuple[int, ...]]:
        for coeffs in itertools.product(range(self.p), repeat=self.rank):
            v = [0] * self.dim
            for c, row in zip(coeffs, self.rows):
                if c:
                    v = [(x + c * y) % self.p for x, y in zip(v, row)]
            yield tuple(v)

    def preimage(self, images: Sequence[Sequence[int]], src_dim: int) -> "ModPSubgroup":
        """``{x in (Z/p)^src_dim : sum_i x_i images[i] in self}``."""
        # x maps into self iff it is orthogonal to every f o L with f in the annihilator
        ann = self.annihilator()
        conds = [[sum(f[k] * images[i][k] for k in range(self.dim)) % self.p for i in range(src_dim)]
                 for f in ann.rows]
        return ModPSubgroup.span(self.p, src_dim, conds).annihilator()

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def enumerate_subspaces(p: int, n: int) -> Iterator[ModPSubgroup]:
    """Every subspace of GF(p)^n exactly once, via RREF shapes."""
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
            for vals in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * n for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, c), v in zip(slots, vals):
                    rows[i][c] = v
                yield ModPSubgroup(p, n, tuple(tuple(r) for r in rows))
