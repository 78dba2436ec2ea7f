"""Eigenspace dimensions of the cyclic cover, genus and stratum data.

The unfolding of the triangle with angles q_i*pi/k is the cyclic cover
y^k = prod (z - z_i)^{q_i}.  The deck group acts on cohomology, and the
dimension of every eigenspace is controlled by the fractional-part sums
from :mod:`triorbit.angles`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .angles import AngleSystem, t_int


class GenusMismatchError(ArithmeticError):
    """The eigen-sum and Riemann-Hurwitz genus formulas disagree."""


def eigenform_dim(sys: AngleSystem, ell: int) -> int:
    """dim of the holomorphic part of the ell-eigenspace: max(t(-ell)-1, 0)."""
    if ell % sys.k == 0:
        return 0
    return max(t_int(sys.q, sys.k, -ell) - 1, 0)


def eigenspace_dim(sys: AngleSystem, ell: int) -> int:
    """dim of the full ell-eigenspace of H^1: max(t(ell)+t(-ell)-2, 0)."""
    if ell % sys.k == 0:
        return 0
    return max(t_int(sys.q, sys.k, ell) + t_int(sys.q, sys.k, -ell) - 2, 0)


def genus(sys: AngleSystem) -> int:
    """Genus of the cover, as half the sum of eigenspace dimensions.

    For triangles the result is cross-checked against the independent
    Riemann-Hurwitz count 1 + (k - sum gcd(q_i, k))/2; a mismatch means
    an arithmetic bug and raises.
    """
    total = sum(eigenspace_dim(sys, ell) for ell in range(1, sys.k))
    if total % 2 != 0:
        raise GenusMismatchError(f"odd eigenspace-dimension sum {total} for {sys}")
    g = total // 2
    if sys.n == 3:
        g_rh = riemann_hurwitz_genus(sys)
        if g != g_rh:
            raise GenusMismatchError(f"eigen-sum genus {g} != Riemann-Hurwitz {g_rh} for {sys}")
    return g


def riemann_hurwitz_genus(sys: AngleSystem) -> int:
    """Independent genus count for triangles from the ramification data."""
    if sys.n != 3:
        raise ValueError("Riemann-Hurwitz shortcut only implemented for triangles")
    d = sum(gcd(qi, sys.k) for qi in sys.q)
    return 1 + (sys.k - d) // 2


@dataclass(frozen=True)
class StratumSignature:
    """Zero orders of the unfolding's one-form, plus marked points.

    ``zero_orders`` lists the positive cone-point orders (descending);
    preimages where the form is regular are counted as marked points.
    """

    zero_orders: tuple[int, ...]
    marked_points: int

    def __str__(self) -> str:
        if not self.zero_orders:
            inner = ""
        else:
            inner = ", ".join(map(str, self.zero_orders))
        s = f"H({inner})"
        if self.marked_points:
            s += f" + {self.marked_points} marked"
        return s


def stratum(sys: AngleSystem) -> StratumSignature:
    """Stratum of the triangle unfolding.

    Over the branch point with angle q_i*pi/k there are d_i = gcd(q_i, k)
    preimages, each a zero of order q_i/d_i - 1 (order 0 means a marked
    point).  Restricted to n = 3, where the cover is unramified over
    infinity and the form is regular there.
    """
    if sys.n != 3:
        raise ValueError("stratum computed only for triangles (n = 3)")
    orders = []
    marked = 0
    for qi in sys.q:
        d = gcd(qi, sys.k)
        m = qi // d - 1
        if m > 0:
            orders.extend([m] * d)
        else:
            marked += d
    sig = StratumSignature(tuple(sorted(orders, reverse=True)), marked)
    if sum(sig.zero_orders) != 2 * genus(sys) - 2:
        raise GenusMismatchError(f"stratum degree {sum(sig.zero_orders)} != 2g-2 for {sys}")
    return sig


def hyperelliptic_excluded(sys: AngleSystem) -> bool:
    """True when the orbit closure cannot sit in the hyperelliptic locus.

    Criterion: k odd, and either more than four angles or more than two
    distinct angle values.
    """
    return sys.k % 2 == 1 and (sys.n > 4 or len(set(sys.q)) > 2)


def full_rank_by_pi3(sys: AngleSystem) -> bool:
    """Fast path: all angles multiples of pi/3 force a full-rank closure."""
    return sys.k == 3


def genus_consistency_scan(k_max: int) -> int:
    """Exhaustively check genus/stratum consistency for all primitive triples.

    For every q1 <= q2 <= q3 with q1+q2+q3 = k <= k_max and
    gcd(q1,q2,q3) = 1, verifies (vectorized over each k) that the
    eigen-sum genus, the Riemann-Hurwitz genus, and the stratum degree
    sum agree.  Returns the number of triples checked; raises
    GenusMismatchError on the first discrepancy.
    """
    import numpy as np

    checked = 0
    for k in range(3, k_max + 1):
        triples = [
            (q1, q2, k - q1 - q2)
            for q1 in range(1, k // 3 + 1)
            for q2 in range(q1, (k - q1) // 2 + 1)
            if gcd(gcd(q1, q2), k - q1 - q2) == 1
        ]
        if not triples:
            continue
        tri = np.array(triples, dtype=np.int64)
        # rows[q][l] = (q*l) mod k; column sums give k * t(l) per triple
        rows = np.outer(np.arange(k, dtype=np.int64), np.arange(k, dtype=np.int64)) % k
        tsum = (rows[tri[:, 0]] + rows[tri[:, 1]] + rows[tri[:, 2]]) // k
        pair = tsum[:, 1:] + tsum[:, :0:-1]  # t(l) + t(-l) for l = 1..k-1
        g_eigen = np.clip(pair - 2, 0, None).sum(axis=1) // 2
        d = np.gcd(tri, k).sum(axis=1)
        g_rh = 1 + (k - d) // 2
        # stratum degree: sum of d_i*(q_i/d_i - 1) = k - sum of d_i
        degree = k - d
        bad = np.nonzero((g_eigen != g_rh) | (degree != 2 * g_eigen - 2))[0]
        if bad.size:
            q = tuple(int(x) for x in tri[bad[0]])
            raise GenusMismatchError(
                f"genus/stratum mismatch at {q}; k={k}: eigen {g_eigen[bad[0]]}, RH {g_rh[bad[0]]}"
            )
        checked += len(triples)
    return checked
