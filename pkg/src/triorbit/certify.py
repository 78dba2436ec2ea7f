"""Full-rank certification of triangle unfoldings and verdict assembly.

The certification runs a single pass over the residues a = 2..k-1,
collecting a divisor set D, a pairing relation E on D, and a unit
subset A, then checks that D collapses to one equivalence class and
that A generates the full unit group (Z/k)*.  Success certifies that
the orbit closure of the generic unfolding has full rank; combined
with the hyperellipticity exclusion and genus >= 3 this yields a dense
orbit in a connected component of a stratum.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .angles import (
    AngleSystem,
    ResidueSet,
    make_angle_system,
    multiplicative_closure,
    t_int,
    unit_group,
)
from .hodge import StratumSignature, genus, hyperelliptic_excluded, stratum
from .unionfind import UnionFind


class Verdict(str, enum.Enum):
    DENSE = "DenseInStratumComponent"
    FULL_RANK_UNDETERMINED = "FullRankUndetermined"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RelationTrace:
    """The raw state of the certification pass: D, E, A and D's classes."""

    D: frozenset[int]
    E: frozenset[tuple[int, int]]
    A: ResidueSet
    classes: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class Certificate:
    sys: AngleSystem
    genus: int
    stratum: StratumSignature
    rank_lower_bound: int
    full_rank_certified: bool
    hyperelliptic_excluded: bool
    verdict: Verdict
    trace: RelationTrace

    def to_dict(self) -> dict:
        a_closure = multiplicative_closure(self.trace.A)
        return {
            "q": list(self.sys.q),
            "k": self.sys.k,
            "genus": self.genus,
            "stratum": list(self.stratum.zero_orders),
            "marked_points": self.stratum.marked_points,
            "rank_lower_bound": self.rank_lower_bound,
            "full_rank": self.full_rank_certified,
            "hyperelliptic_excluded": self.hyperelliptic_excluded,
            "verdict": self.verdict.value,
            "trace": {
                "D": sorted(self.trace.D),
                "E": sorted(list(pair) for pair in self.trace.E),
                "A_generators": sorted(self.trace.A.members),
                "A_closure_size": len(a_closure),
                "classes": sorted(sorted(c) for c in self.trace.classes),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _require_triangle(sys: AngleSystem) -> None:
    if sys.n != 3:
        raise ValueError(f"certification implemented for triangles only, got n={sys.n}")
    if not sys.normalized:
        raise ValueError(f"angle system {sys} is not normalized (gcd > 1)")


def _t_minus_table(sys: AngleSystem) -> list[int]:
    """tm[a] = t(-a) for a = 0..k-1."""
    return [t_int(sys.q, sys.k, -a) for a in range(sys.k)]


def divisor_set(sys: AngleSystem) -> frozenset[int]:
    """Divisors d of k admitting a residue a with gcd(a,k)=d and t(-a)>1."""
    _require_triangle(sys)
    tm = _t_minus_table(sys)
    return frozenset(gcd(a, sys.k) for a in range(1, sys.k) if tm[a] > 1)


def build_relations(sys: AngleSystem) -> RelationTrace:
    """One pass of the certification loop over a = 2..k-1.

    Seeds D = {1} and A = {1, -1}.  Whenever both t(-a) and t(-(2-a))
    exceed 1, either the pair of gcd-divisors is recorded in E, or (when
    the divisors agree) the units w with w*a = 2-a are added to A.
    Afterwards A absorbs every unit congruent to 1 mod k/d for d in D.
    """
    _require_triangle(sys)
    k = sys.k
    tm = _t_minus_table(sys)
    units = unit_group(k).members

    D = {1}
    E: set[tuple[int, int]] = set()
    A = {1 % k, (k - 1) % k}
    for a in range(2, k):
        if tm[a] <= 1:
            continue
        d1 = gcd(a, k)
        D.add(d1)
        b = (2 - a) % k
        if b == 0 or tm[b] <= 1:
            continue
        d2 = gcd(b, k)
        if d1 == d2:
            A.update(w for w in units if w * a % k == b)
        else:
            E.add((min(d1, d2), max(d1, d2)))

    uf = UnionFind(D)
    for d1, d2 in E:
        uf.union(d1, d2)

    for d in D:
        step = k // d
        A.update(a for a in units if a % step == 1 % step)

    return RelationTrace(
        D=frozenset(D),
        E=frozenset(E),
        A=ResidueSet(k, frozenset(A)),
        classes=uf.classes(),
    )


def full_rank_certified(sys: AngleSystem) -> bool:
    """True when D has a single class and A generates (Z/k)*."""
    trace = build_relations(sys)
    return _trace_certifies(sys, trace)


def _trace_certifies(sys: AngleSystem, trace: RelationTrace) -> bool:
    if len(trace.classes) > 1:
        return False
    return multiplicative_closure(trace.A).members == unit_group(sys.k).members


def rank_lower_bound(sys: AngleSystem) -> int:
    """Best available lower bound for the rank of the orbit closure."""
    _require_triangle(sys)
    k, n = sys.k, sys.n
    if any(2 * qi % k != 0 for qi in sys.q):
        bound = n - 2
    else:
        bound = (n - 1) // 2  # ceil((n-2)/2)

    tm = _t_minus_table(sys)
    for a in unit_group(k).members:
        b = (2 - a) % k
        if 2 * a % k != 2 % k and tm[a] > 1 and b != 0 and tm[b] > 1:
            bound = max(bound, 2)
            break

    if full_rank_certified(sys):
        bound = max(bound, genus(sys))
    return bound


def make_certificate(sys: AngleSystem) -> Certificate:
    _require_triangle(sys)
    trace = build_relations(sys)
    certified = _trace_certifies(sys, trace)
    g = genus(sys)
    sig = stratum(sys)
    hyp = hyperelliptic_excluded(sys)

    if certified and hyp and g >= 3:
        verdict = Verdict.DENSE
    elif certified:
        verdict = Verdict.FULL_RANK_UNDETERMINED
    else:
        verdict = Verdict.INCONCLUSIVE

    bound = rank_lower_bound(sys)
    if certified:
        bound = max(bound, g)
    return Certificate(
        sys=sys,
        genus=g,
        stratum=sig,
        rank_lower_bound=bound,
        full_rank_certified=certified,
        hyperelliptic_excluded=hyp,
        verdict=verdict,
        trace=trace,
    )


def enumerate_triples(
    k_max: int,
    odd_k: bool = True,
    distinct_q: bool = True,
    gcd_one: bool = True,
) -> Iterator[tuple[int, int, int]]:
    """All q1 <= q2 <= q3 with q1+q2+q3 = k <= k_max, lexicographic in (k, q1, q2)."""
    if k_max < 3:
        raise ValueError(f"k_max must be >= 3, got {k_max}")
    for k in range(3, k_max + 1):
        if odd_k and k % 2 == 0:
            continue
        yield from triples_for_k(k, distinct_q=distinct_q, gcd_one=gcd_one)


def triples_for_k(
    k: int, distinct_q: bool = True, gcd_one: bool = True
) -> Iterator[tuple[int, int, int]]:
    """The q1 <= q2 <= q3 partitions of a single k, lexicographic."""
    for q1 in range(1, k // 3 + 1):
        for q2 in range(q1, (k - q1) // 2 + 1):
            q3 = k - q1 - q2
            if distinct_q and (q1 == q2 or q2 == q3):
                continue
            if gcd_one and gcd(gcd(q1, q2), q3) != 1:
                continue
            yield (q1, q2, q3)


def enumerate_certificates(
    k_max: int,
    odd_k: bool = True,
    distinct_q: bool = True,
    gcd_one: bool = True,
) -> Iterator[Certificate]:
    """Certificates for the enumerated triples, in deterministic order.

    Triples with gcd > 1 (reachable only with gcd_one=False) are reduced
    to their primitive form before certification.
    """
    for triple in enumerate_triples(k_max, odd_k, distinct_q, gcd_one):
        yield make_certificate(make_angle_system(triple, reduce=True))
