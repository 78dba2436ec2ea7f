"""Exact arithmetic kernel: rational angle systems and residue sets.

A triangle (or n-gon) with angles q_i*pi/k is encoded by the integer
tuple (q_1, ..., q_n; k).  Everything in this module is exact integer /
rational arithmetic; floating point is deliberately not used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class AngleSystemError(ValueError):
    """Invalid angle data (non-positive entries, bad sum, gcd violation)."""


@dataclass(frozen=True)
class AngleSystem:
    """Angles q_i*pi/k with q sorted ascending and sum(q) = (n-2)*k."""

    q: tuple[int, ...]
    k: int
    normalized: bool

    @property
    def n(self) -> int:
        return len(self.q)

    def __str__(self) -> str:
        return f"({', '.join(map(str, self.q))}; {self.k})"


def make_angle_system(q, reduce: bool = False, strict: bool = False) -> AngleSystem:
    """Canonicalize a tuple of angle numerators.

    The common denominator k is recomputed as sum(q)/(n-2).  With
    ``reduce``, the entries are divided by their common gcd first.  With
    ``strict``, a common gcd > 1 is an error (the full-rank algorithm's
    input contract).
    """
    q = tuple(int(x) for x in q)
    if len(q) < 3:
        raise AngleSystemError(f"need at least 3 angles, got {len(q)}")
    if any(x < 1 for x in q):
        raise AngleSystemError(f"angle numerators must be positive: {q}")

    g = 0
    for x in q:
        g = gcd(g, x)
    if reduce and g > 1:
        q = tuple(x // g for x in q)
        g = 1

    total = sum(q)
    n = len(q)
    if total % (n - 2) != 0:
        raise AngleSystemError(f"sum {total} not divisible by n-2 = {n - 2}")
    k = total // (n - 2)
    if any(x >= k for x in q):
        raise AngleSystemError(f"every q_i must be < k = {k}: {q}")

    normalized = gcd(g, k) == 1
    if strict and not normalized:
        raise AngleSystemError(f"gcd(q, k) = {gcd(g, k)} != 1 in strict mode: {q}")
    return AngleSystem(q=tuple(sorted(q)), k=k, normalized=normalized)


def t_component(sys: AngleSystem, i: int, ell: int) -> Fraction:
    """Fractional part {ell*q_i/k} as an exact fraction in [0, 1)."""
    if not 0 <= i < sys.n:
        raise IndexError(f"angle index {i} out of range")
    return Fraction((ell * sys.q[i]) % sys.k, sys.k)


def t_total(sys: AngleSystem, ell: int) -> int:
    """Sum of the fractional parts {ell*q_i/k}; always an integer."""
    return t_int(sys.q, sys.k, ell)


def t_int(q, k: int, ell: int) -> int:
    """Integer-only fast path for the fractional-part sum."""
    s = sum((ell * qi) % k for qi in q)
    if s % k != 0:
        raise ArithmeticError(f"fractional-part sum {s}/{k} is not an integer")
    return s // k


@dataclass(frozen=True)
class ResidueSet:
    """A subset of residues mod ``modulus``, stored canonically in 0..k-1."""

    modulus: int
    members: frozenset[int]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        bad = [m for m in self.members if not 0 <= m < self.modulus]
        if bad:
            raise ValueError(f"members not reduced mod {self.modulus}: {bad}")

    def is_unit_subset(self) -> bool:
        return all(gcd(m, self.modulus) == 1 for m in self.members)

    def __contains__(self, x: int) -> bool:
        return x % self.modulus in self.members

    def __len__(self) -> int:
        return len(self.members)


def unit_group(k: int) -> ResidueSet:
    """The unit group (Z/k)* as a residue set."""
    if k < 2:
        raise ValueError(f"unit group needs modulus >= 2, got {k}")
    return ResidueSet(k, frozenset(a for a in range(1, k) if gcd(a, k) == 1))


def multiplicative_closure(gens: ResidueSet) -> ResidueSet:
    """Smallest multiplicatively closed subset of (Z/k)* containing gens and 1.

    Fixed-point iteration over pairwise products; since the members are
    units of a finite ring, the result is the subgroup they generate.
    """
    k = gens.modulus
    if not gens.is_unit_subset():
        bad = [m for m in gens.members if gcd(m, k) != 1]
        raise ValueError(f"non-unit generators mod {k}: {bad}")
    closed = set(gens.members) | {1 % k}
    frontier = list(closed)
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            p = x * y % k
            if p not in closed:
                closed.add(p)
                frontier.append(p)
    return ResidueSet(k, frozenset(closed))


def residues_with_gcd(k: int, d: int) -> ResidueSet:
    """All a in 1..k-1 with gcd(a, k) = d."""
    if d < 1 or k % d != 0:
        raise ValueError(f"{d} does not divide {k}")
    return ResidueSet(k, frozenset(a for a in range(1, k) if gcd(a, k) == d))
