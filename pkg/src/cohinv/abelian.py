"""Finite abelian groups by invariant factors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d_1 ⊕ ... ⊕ Z/d_k`` with ``1 < d_1 | d_2 | ... | d_k``."""

    invariant_factors: tuple[int, ...] = ()

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FiniteAbelianGroup":
        """Normalize any direct sum of cyclic groups."""
        powers: dict[int, list[int]] = {}
        for n in orders:
            n = int(n)
            if n <= 0:
                raise ValueError("cyclic orders must be positive")
            for p, e in _factorize(n).items():
                powers.setdefault(p, []).append(p ** e)
        k = max((len(v) for v in powers.values()), default=0)
        factors = [1] * k
        for p, pp in powers.items():
            pp.sort(reverse=True)
            for i, q in enumerate(pp):
                factors[k - 1 - i] *= q
        return cls(tuple(f for f in factors if f > 1))

    @classmethod
    def trivial(cls) -> "FiniteAbelianGroup":
        return cls(())

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f <= 1 for f in fs) or any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"not an invariant-factor chain: {fs}")

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def elementary_divisors(self) -> list[int]:
        out = []
        for f in self.invariant_factors:
            out.extend(p ** e for p, e in _factorize(f).items())
        return sorted(out)

    def p_part(self, p: int) -> "FiniteAbelianGroup":
        return FiniteAbelianGroup.from_cyclic_orders(d for d in self.elementary_divisors() if d % p == 0)

    def __add__(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup.from_cyclic_orders(self.invariant_factors + other.invariant_factors)

    def render(self) -> str:
        """Cyclic prime-power summands in ascending order; ``0`` if trivial."""
        ds = self.elementary_divisors()
        return " ⊕ ".join(f"Z/{d}" for d in ds) if ds else "0"

    def __str__(self) -> str:
        return self.render()


def p_part(g: FiniteAbelianGroup, p: int) -> FiniteAbelianGroup:
    return g.p_part(p)
