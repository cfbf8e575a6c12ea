"""Witt ring and mod-2 Milnor K-theory of an iterated Laurent series field.

Over ``F = C((t_1))...((t_m))`` square classes form ``(Z/2)^m`` and -1 is
a square, so ``W(F)`` is the group algebra ``GF(2)[(Z/2)^m]``. Writing
``y_i = 1 + [t_i]`` turns it into the exterior algebra on ``y_1..y_m``
(``y_i^2 = 0``), where the powers of the fundamental ideal are the
degree filtration and ``k_n(F)/2`` is the degree-n part.

Monomials are bitmasks over the tower variables; an element is a
frozenset of monomials (GF(2) coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotInIPowerError


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _mul(a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
    out: set[int] = set()
    for s in a:
        for t in b:
            if s & t == 0:
                out ^= {s | t}
    return frozenset(out)


@dataclass(frozen=True)
class FieldTower:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("tower variable names must be distinct")

    @classmethod
    def of(cls, *names: str) -> "FieldTower":
        return cls(tuple(names))

    @property
    def m(self) -> int:
        return len(self.names)

    def var(self, name: str) -> "SquareClass":
        return SquareClass(self, 1 << self.names.index(name))

    def square_class(self, spec) -> "SquareClass":
        """Parse ``"xy"``/``"x*y"``/``"1"`` or a list of names (a multiset; repeats cancel)."""
        if isinstance(spec, SquareClass):
            return spec
        if isinstance(spec, int):
            return SquareClass(self, spec)
        if isinstance(spec, str):
            s = spec.strip()
            if s in ("", "1"):
                return SquareClass(self, 0)
            if "*" in s:
                parts = s.split("*")
            elif all(len(n) == 1 for n in self.names):
                parts = list(s)
            else:
                parts = [s]
        else:
            parts = list(spec)
        bits = 0
        for p in parts:
            if p not in self.names:
                raise ValueError(f"unknown tower variable {p!r}")
            bits ^= 1 << self.names.index(p)
        return SquareClass(self, bits)

    def monomial_name(self, s: int, sep: str = "∧") -> str:
        return sep.join(self.names[i] for i in range(self.m) if s >> i & 1)

    def drop_last(self) -> "FieldTower":
        if not self.names:
            raise ValueError("the base field has no residue map")
        return FieldTower(self.names[:-1])


@dataclass(frozen=True)
class SquareClass:
    tower: FieldTower
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.tower.m:
            raise ValueError("square class has bits outside the tower")

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(self.tower, self.bits ^ other.bits)

    def is_trivial(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return self.tower.monomial_name(self.bits, "") or "1"

    def to_json(self) -> list[str]:
        return [self.tower.names[i] for i in range(self.tower.m) if self.bits >> i & 1]


@dataclass(frozen=True)
class WittClass:
    tower: FieldTower
    terms: frozenset[int] = frozenset()

    @classmethod
    def zero(cls, tower: FieldTower) -> "WittClass":
        return cls(tower)

    @classmethod
    def one(cls, tower: FieldTower) -> "WittClass":
        return cls(tower, frozenset({0}))

    def _check(self, other: "WittClass") -> None:
        if other.tower != self.tower:
            raise ValueError("Witt classes over different towers")

    def __add__(self, other: "WittClass") -> "WittClass":
        self._check(other)
        return WittClass(self.tower, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "WittClass") -> "WittClass":
        self._check(other)
        return WittClass(self.tower, _mul(self.terms, other.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def min_degree(self) -> int | None:
        return min((_popcount(s) for s in self.terms), default=None)

    def homogeneous_part(self, n: int) -> "KClass":
        return KClass(self.tower, n, frozenset(s for s in self.terms if _popcount(s) == n))

    def format(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda s: (_popcount(s), s))
        return " + ".join("1" if s == 0 else "y_" + self.tower.monomial_name(s, "") for s in ordered)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class KClass:
    """Homogeneous element of ``k_n(F)/2``: a GF(2) sum of symbols on tower variables."""

    tower: FieldTower
    degree: int
    terms: frozenset[int] = frozenset()

    def __post_init__(self):
        if any(_popcount(s) != self.degree for s in self.terms):
            raise ValueError("KClass terms must have the stated degree")

    @classmethod
    def zero(cls, tower: FieldTower, degree: int) -> "KClass":
        return cls(tower, degree)

    def __add__(self, other: "KClass") -> "KClass":
        if other.tower != self.tower or other.degree != self.degree:
            raise ValueError("KClass sum needs equal tower and degree")
        return KClass(self.tower, self.degree, self.terms ^ other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def format(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(self.tower.monomial_name(s) for s in sorted(self.terms))

    def __str__(self) -> str:
        return self.format()

    def to_json(self) -> list[list[str]]:
        return [[self.tower.names[i] for i in range(self.tower.m) if s >> i & 1] for s in sorted(self.terms)]


def square_class_embed(a: SquareClass) -> WittClass:
    """``<a> = prod_{i in a} (1 + y_i)``."""
    out = frozenset({0})
    for i in range(a.tower.m):
        if a.bits >> i & 1:
            out = _mul(out, frozenset({0, 1 << i}))
    return WittClass(a.tower, out)


def diag_form(classes: Sequence[SquareClass], tower: FieldTower | None = None) -> WittClass:
    if not classes:
        if tower is None:
            raise ValueError("empty form needs a tower")
        return WittClass.zero(tower)
    out = WittClass.zero(classes[0].tower)
    for a in classes:
        out = out + square_class_embed(a)
    return out


def pfister(*classes: SquareClass, tower: FieldTower | None = None) -> WittClass:
    """``<<a_1,...,a_n>> = prod (1 + <a_i>)`` (with -1 a square)."""
    if not classes:
        if tower is None:
            raise ValueError("0-fold Pfister form needs a tower")
        return WittClass.one(tower)
    out = WittClass.one(classes[0].tower)
    for a in classes:
        out = out * (WittClass.one(a.tower) + square_class_embed(a))
    return out


def hyperbolic(tower: FieldTower) -> WittClass:
    return WittClass.zero(tower)


def in_I_power(w: WittClass, n: int) -> bool:
    if n < 0:
        raise ValueError("n must be non-negative")
    return all(_popcount(s) >= n for s in w.terms)


def e_n(w: WittClass, n: int) -> KClass:
    """Degree-n component of a class in ``I^n``."""
    if not in_I_power(w, n):
        raise NotInIPowerError(f"{w} is not in I^{n}")
    return w.homogeneous_part(n)


def symbol(*classes: SquareClass, tower: FieldTower | None = None) -> KClass:
    """``(a_1) u ... u (a_n)``, expanded multilinearly."""
    if not classes:
        if tower is None:
            raise ValueError("empty symbol needs a tower")
        return KClass(tower, 0, frozenset({0}))
    t = classes[0].tower
    acc = frozenset({0})
    for a in classes:
        lin = frozenset(1 << i for i in range(t.m) if a.bits >> i & 1)
        acc = _mul(acc, lin)
    return KClass(t, len(classes), acc)


def cup(x: KClass, y: KClass) -> KClass:
    if x.tower != y.tower:
        raise ValueError("cup product needs a common tower")
    return KClass(x.tower, x.degree + y.degree, _mul(x.terms, y.terms))


def residue_last(x: KClass) -> KClass:
    """Second residue at the last tower variable (uniformizer ``t_m``)."""
    t = x.tower
    if t.m == 0:
        raise ValueError("the base field has no residue map")
    top = 1 << (t.m - 1)
    if x.degree == 0:
        return KClass(t.drop_last(), 0)
    return KClass(t.drop_last(), x.degree - 1, frozenset(s ^ top for s in x.terms if s & top))


def quaternion_trace_form(a: SquareClass, b: SquareClass) -> WittClass:
    """Trace form of the canonical involution on ``(a, b)``: the norm form ``<<a, b>>``."""
    return pfister(a, b)


def matrix_involution_trace_form(tower: FieldTower) -> WittClass:
    """Full trace form of an involution of the first kind on ``M_2n(F)``: zero in W(F)."""
    return WittClass.zero(tower)
