"""Quadratic polynomials in the fundamental weights of one component."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class QuadraticForm:
    """``sum_{j<=k} coeffs[j][k] * w_j * w_k`` with integer coefficients.

    Only the upper triangle of ``coeffs`` is meaningful; the lower triangle
    is stored as zeros so that equality is structural.
    """

    coeffs: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_gram(cls, gram) -> "QuadraticForm":
        """Build from a symmetric matrix ``M`` meaning ``w^T M w``."""
        n = len(gram)
        rows = []
        for j in range(n):
            row = []
            for k in range(n):
                if k < j:
                    row.append(0)
                    continue
                v = gram[j][k] if j == k else gram[j][k] + gram[k][j]
                v = Fraction(v)
                if v.denominator != 1:
                    raise ValueError("quadratic form has non-integral coefficients")
                row.append(int(v))
            rows.append(tuple(row))
        return cls(tuple(rows))

    def gram(self) -> list[list[Fraction]]:
        n = self.rank
        g = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            g[j][j] = Fraction(self.coeffs[j][j])
            for k in range(j + 1, n):
                g[j][k] = g[k][j] = Fraction(self.coeffs[j][k], 2)
        return g

    def polar(self) -> list[list[int]]:
        """Integer matrix of the bilinear form ``P(x+y) - P(x) - P(y)``."""
        n = self.rank
        return [[2 * self.coeffs[j][j] if j == k else self.coeffs[min(j, k)][max(j, k)]
                 for k in range(n)] for j in range(n)]

    def substitute(self, images: Sequence[Sequence[int]]) -> "QuadraticForm":
        """Replace ``w_j`` by ``sum_k images[j][k] w_k``."""
        g = self.gram()
        n = self.rank
        s = [[Fraction(x) for x in row] for row in images]
        # (S^T G S)[a][b]
        gs = [[sum(g[j][l] * s[l][b] for l in range(n)) for b in range(n)] for j in range(n)]
        out = [[sum(s[j][a] * gs[j][b] for j in range(n)) for b in range(n)] for a in range(n)]
        return QuadraticForm.from_gram(out)

    def scale(self, c: int) -> "QuadraticForm":
        return QuadraticForm(tuple(tuple(c * x for x in row) for row in self.coeffs))

    def halve(self) -> "QuadraticForm":
        if not self.is_even():
            raise ValueError("form has odd coefficients")
        return QuadraticForm(tuple(tuple(x // 2 for x in row) for row in self.coeffs))

    def is_even(self) -> bool:
        return all(x % 2 == 0 for row in self.coeffs for x in row)

    def is_zero(self) -> bool:
        return not any(x for row in self.coeffs for x in row)

    def ratio(self, other: "QuadraticForm") -> Fraction | None:
        """``c`` with ``self == c * other``, or None if not proportional."""
        if other.rank != self.rank or other.is_zero():
            raise ValueError("ratio needs a nonzero form of the same rank")
        c = None
        for row_s, row_o in zip(self.coeffs, other.coeffs):
            for a, b in zip(row_s, row_o):
                if b == 0:
                    if a != 0:
                        return None
                    continue
                q = Fraction(a, b)
                if c is None:
                    c = q
                elif c != q:
                    return None
        return c

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        return QuadraticForm(tuple(tuple(a + b for a, b in zip(r, s))
                                   for r, s in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "QuadraticForm":
        return self.scale(-1)

    def format(self, var: str = "w") -> str:
        terms = []
        for j in range(self.rank):
            for k in range(j, self.rank):
                c = self.coeffs[j][k]
                if not c:
                    continue
                mono = f"{var}{j + 1}^2" if j == k else f"{var}{j + 1}*{var}{k + 1}"
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                sign = "-" if c < 0 else "+"
                terms.append((sign, mag + mono))
        if not terms:
            return "0"
        first = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([first] + [f"{s} {t}" for s, t in terms[1:]])

    def __str__(self) -> str:
        return self.format()
